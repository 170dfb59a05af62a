import numpy as np
import pytest

from qft1d import (ConfigurationError, FieldKind, PacketSpec, PacketSpectrum,
                   UnitSystem, build_packet, centroid, decompose,
                   evolve_first_quantized, first_quantized_density, make_basis,
                   make_grid, pseudo_inner, reconstruct, spectral_norm)


@pytest.fixture(scope="module")
def setup():
    units = UnitSystem.compton()
    grid = make_grid(512, 32.0, units)
    bases = {kind: make_basis(kind, grid, units) for kind in FieldKind}
    return units, grid, bases


def test_packet_value_at_center(setup):
    units, grid, bases = setup
    spec = PacketSpec(x0=grid.x[200], width=1.5, p0=2.0)
    psi = build_packet(spec, grid, units, FieldKind.DIRAC)
    # envelope is exactly N e^{i p0 x0} at the centre, zero in the other row
    norm_const = np.abs(psi.upper[200])
    assert psi.upper[200] == pytest.approx(norm_const * np.exp(1j * 2.0 * spec.x0))
    assert np.all(psi.lower == 0)
    assert norm_const > 0


def test_packet_bit_zero_outside_support(setup):
    units, grid, bases = setup
    spec = PacketSpec(x0=0.0, width=2.0, p0=3.0)
    psi = build_packet(spec, grid, units, FieldKind.DIRAC)
    lo, hi = spec.support
    outside = (grid.x <= lo) | (grid.x >= hi)
    assert np.all(psi.upper[outside] == 0.0)  # bit zero, not merely small


def test_packet_lower_row(setup):
    units, grid, bases = setup
    psi = build_packet(PacketSpec(0.0, 1.0, 1.0, charge_row="lower"), grid,
                       units, FieldKind.KLEIN_GORDON)
    assert np.all(psi.upper == 0)
    assert abs(pseudo_inner(psi, psi, "tau3") + 1.0) < 1e-12  # tau3 norm -1


def test_packet_support_touching_boundary_errors(setup):
    units, grid, bases = setup
    with pytest.raises(ConfigurationError):
        build_packet(PacketSpec(x0=14.0, width=2.0, p0=0.0), grid, units)
    with pytest.raises(ConfigurationError):
        build_packet(PacketSpec(x0=0.0, width=32.0 / np.pi, p0=0.0), grid, units)


def test_packet_bad_charge_row(setup):
    units, grid, bases = setup
    with pytest.raises(ConfigurationError):
        build_packet(PacketSpec(0.0, 1.0, 0.0, charge_row="middle"), grid, units)


@pytest.mark.parametrize("kind", list(FieldKind))
def test_decompose_single_mode_impulse(setup, kind):
    units, grid, bases = setup
    basis = bases[kind]
    q = 37
    c = np.zeros(grid.n_points, dtype=complex)
    c[q] = 1.0
    psi = basis.field(c, np.zeros_like(c))
    spectrum = decompose(psi, basis)
    expected = np.zeros(grid.n_points)
    expected[q] = 1.0
    assert np.max(np.abs(spectrum.g_plus - expected)) < 1e-12
    assert np.max(np.abs(spectrum.g_minus)) < 1e-12


@pytest.mark.parametrize("kind", list(FieldKind))
def test_compact_packet_has_negative_energy_content(setup, kind):
    units, grid, bases = setup
    psi = build_packet(PacketSpec(0.0, 2.0, 3.0), grid, units, kind)
    spectrum = decompose(psi, bases[kind])
    assert np.max(np.abs(spectrum.g_minus)) > 1e-6


@pytest.mark.parametrize("kind", list(FieldKind))
def test_spectrum_normalization_oracle(setup, kind):
    # oracle: direct lattice sums of the coefficient arrays
    units, grid, bases = setup
    psi = build_packet(PacketSpec(0.0, 2.0, 3.0), grid, units, kind)
    spectrum = decompose(psi, bases[kind])
    direct = (np.sum(np.abs(spectrum.g_plus) ** 2)
              - kind.epsilon * np.sum(np.abs(spectrum.g_minus) ** 2))
    assert direct == pytest.approx(1.0, abs=1e-10)
    assert spectral_norm(spectrum) == pytest.approx(direct)


@pytest.mark.parametrize("kind", list(FieldKind))
def test_reconstruction(setup, kind):
    units, grid, bases = setup
    psi = build_packet(PacketSpec(0.0, 2.0, 3.0), grid, units, kind)
    back = reconstruct(decompose(psi, bases[kind]), bases[kind])
    assert np.max(np.abs(back.data - psi.data)) < 1e-10 * np.max(np.abs(psi.data))


def test_free_evolution_identity_at_t0(setup):
    units, grid, bases = setup
    basis = bases[FieldKind.DIRAC]
    psi = build_packet(PacketSpec(0.0, 2.0, 3.0), grid, units, FieldKind.DIRAC)
    spectrum = decompose(psi, basis)
    again = evolve_first_quantized(spectrum, basis, 0.0)
    assert np.max(np.abs(again.data - psi.data)) < 1e-12


def test_free_evolution_single_mode_phase(setup):
    units, grid, bases = setup
    basis = bases[FieldKind.DIRAC]
    q = 11
    c = np.zeros(grid.n_points, dtype=complex)
    c[q] = 1.0
    spectrum = PacketSpectrum(c, np.zeros_like(c), FieldKind.DIRAC, grid)
    t = 0.7
    psi_t = evolve_first_quantized(spectrum, basis, t)
    psi_0 = basis.field(c, np.zeros_like(c))
    phase = np.exp(-1j * basis.energies[q] * t)
    assert np.max(np.abs(psi_t.data - phase * psi_0.data)) < 1e-12


@pytest.mark.parametrize("kind", list(FieldKind))
def test_light_cone_containment(setup, kind):
    units, grid, bases = setup
    spec = PacketSpec(0.0, 2.0, 3.0)
    psi = build_packet(spec, grid, units, kind)
    spectrum = decompose(psi, bases[kind])
    lo, hi = spec.support
    for t in (0.5, 1.0, 2.0):
        dens = first_quantized_density(
            evolve_first_quantized(spectrum, bases[kind], t), kind, t)
        outside = (grid.x < lo - units.c * t) | (grid.x > hi + units.c * t)
        assert np.max(np.abs(dens.values[outside])) < 1e-10 * dens.peak()


def test_density_signs_and_conservation(setup):
    units, grid, bases = setup
    # Dirac density non-negative
    psi = build_packet(PacketSpec(0.0, 2.0, 3.0), grid, units, FieldKind.DIRAC)
    dens = first_quantized_density(psi, FieldKind.DIRAC)
    assert np.all(dens.values >= 0)
    # KG single negative mode: tau3 density non-positive
    basis = bases[FieldKind.KLEIN_GORDON]
    c = np.zeros(grid.n_points, dtype=complex)
    c[9] = 1.0
    neg_mode = basis.field(np.zeros_like(c), c)
    dens_kg = first_quantized_density(neg_mode, FieldKind.KLEIN_GORDON)
    assert np.all(dens_kg.values <= 1e-14)
    # conservation of the integral under free evolution (oracle: several t)
    for kind in FieldKind:
        p = build_packet(PacketSpec(0.0, 2.0, 3.0), grid, units, kind)
        s = decompose(p, bases[kind])
        ref = first_quantized_density(p, kind).integral()
        for t in (0.3, 0.9, 1.7):
            evolved = first_quantized_density(
                evolve_first_quantized(s, bases[kind], t), kind, t)
            assert evolved.integral() == pytest.approx(ref, abs=1e-10)


@pytest.mark.parametrize("kind", list(FieldKind))
def test_negative_energy_component_moves_left(setup, kind):
    units, grid, bases = setup
    psi = build_packet(PacketSpec(0.0, 2.0, 3.0), grid, units, kind)
    spectrum = decompose(psi, bases[kind])
    only_minus = PacketSpectrum(np.zeros_like(spectrum.g_plus),
                                spectrum.g_minus, kind, grid)
    t = 1.5
    d0 = first_quantized_density(
        evolve_first_quantized(only_minus, bases[kind], 0.0), kind, 0.0)
    dt_ = first_quantized_density(
        evolve_first_quantized(only_minus, bases[kind], t), kind, t)
    assert centroid(dt_) - centroid(d0) < 0


def test_centroid_rejects_zero_density(setup):
    units, grid, bases = setup
    from qft1d.lattice import DensityField
    with pytest.raises(ConfigurationError):
        centroid(DensityField(grid, np.zeros(grid.n_points), "rho_pa", 0.0))
