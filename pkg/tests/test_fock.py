import numpy as np
import pytest

from qft1d.errors import ConfigurationError
from qft1d.fock import (FockSpace, build_ladder, build_nu_dagger,
                        build_psi_dagger, charge_operator,
                        check_charge_raising, check_number_raising,
                        number_operator)


def test_dimensions():
    assert FockSpace(2, "fermi", 1).dim == 2 ** 4
    assert FockSpace(2, "bose", 3).dim == 4 ** 4
    assert FockSpace(3, "fermi", 1).dim == 64


def test_fermi_requires_unit_occupancy():
    with pytest.raises(ConfigurationError):
        FockSpace(2, "fermi", 2)
    with pytest.raises(ConfigurationError):
        FockSpace(2, "maxwell", 1)


def test_ladder_index_validation():
    space = FockSpace(2, "fermi", 1)
    with pytest.raises(ConfigurationError):
        build_ladder(space, 2, "particle", "create")
    with pytest.raises(ConfigurationError):
        build_ladder(space, 0, "electron", "create")


def test_annihilator_kills_vacuum():
    space = FockSpace(2, "fermi", 1)
    vac = space.vacuum()
    for species in ("particle", "antiparticle"):
        a = build_ladder(space, 1, species, "annihilate")
        assert np.all(a.matrix @ vac == 0)


def test_fermi_anticommutators_exact():
    space = FockSpace(2, "fermi", 1)
    eye = np.eye(space.dim)
    ops = {}
    for i in range(2):
        for sp in ("particle", "antiparticle"):
            ops[(i, sp)] = (build_ladder(space, i, sp, "annihilate").matrix,
                            build_ladder(space, i, sp, "create").matrix)
    for key_a, (a, adag) in ops.items():
        for key_b, (b, bdag) in ops.items():
            anti = a @ bdag + bdag @ a
            expected = eye if key_a == key_b else 0 * eye
            assert np.max(np.abs(anti - expected)) == 0.0
            # annihilator pairs anticommute
            assert np.max(np.abs(a @ b + b @ a)) == 0.0


def test_bose_commutator_below_truncation():
    # oracle: explicit matrix products, restricted to occupancy <= max-1
    space = FockSpace(2, "bose", 3)
    occ = np.array(space.basis_occupations())
    for i in range(2):
        a = build_ladder(space, i, "particle", "annihilate").matrix
        adag = build_ladder(space, i, "particle", "create").matrix
        comm = a @ adag - adag @ a
        site_occ = occ[:, i]
        keep = site_occ <= space.max_occupancy - 1
        defect = comm[np.ix_(keep, keep)] - np.eye(space.dim)[np.ix_(keep, keep)]
        # sqrt(n)*sqrt(n) rounds for non-square n; exactness bar is 1e-13
        assert np.max(np.abs(defect)) < 1e-13


def test_nu_dagger_structure():
    space = FockSpace(2, "fermi", 1)
    zero = build_nu_dagger(space, [0, 0], [0, 0])
    assert np.all(zero.matrix == 0)
    single = build_nu_dagger(space, [2.5, 0], [0, 0])
    ref = 2.5 * build_ladder(space, 0, "particle", "create").matrix
    assert np.max(np.abs(single.matrix - ref)) == 0.0
    # generic coefficients: oracle is the direct matrix sum
    rng = np.random.default_rng(2)
    a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    nu = build_nu_dagger(space, a, b)
    direct = sum(a[i] * build_ladder(space, i, "particle", "create").matrix
                 + b[i] * build_ladder(space, i, "antiparticle", "create").matrix
                 for i in range(2))
    assert np.max(np.abs(nu.matrix - direct)) == 0.0


@pytest.mark.parametrize("stats,n_modes,max_occ",
                         [("fermi", 1, 1), ("fermi", 2, 1), ("fermi", 3, 1),
                          ("bose", 2, 3)])
def test_number_raising_exact(stats, n_modes, max_occ):
    space = FockSpace(n_modes, stats, max_occ)
    rng = np.random.default_rng(n_modes)
    a = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
    b = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
    report = check_number_raising(space, build_nu_dagger(space, a, b))
    assert report.ok
    assert report.max_defect < 1e-13
    assert report.violating_states == []


def test_number_raising_on_vacuum():
    space = FockSpace(2, "fermi", 1)
    nu = build_nu_dagger(space, [1.0, 0.5j], [0.25, -1.0])
    n_op = number_operator(space).matrix
    state = nu.matrix @ space.vacuum()
    assert np.max(np.abs(n_op @ state - 1.0 * state)) < 1e-14


@pytest.mark.parametrize("stats,n_modes,max_occ",
                         [("fermi", 3, 1), ("bose", 2, 3)])
def test_charge_raising_exact(stats, n_modes, max_occ):
    space = FockSpace(n_modes, stats, max_occ)
    rng = np.random.default_rng(7 * n_modes)
    c1 = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
    c2 = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
    report = check_charge_raising(space, build_psi_dagger(space, c1, c2))
    assert report.ok and report.max_defect < 1e-13


def test_charge_raising_sectors():
    space = FockSpace(2, "fermi", 1)
    psi = build_psi_dagger(space, [1.0, 0.0], [0.0, 1.0])
    q_op = charge_operator(space).matrix
    # vacuum maps to the charge +1 sector
    out = psi.matrix @ space.vacuum()
    assert np.max(np.abs(q_op @ out - out)) < 1e-14
    # one anti-particle quantum (charge -1) maps to the charge 0 sector
    d_dag = build_ladder(space, 1, "antiparticle", "create").matrix
    state = d_dag @ space.vacuum()
    assert np.max(np.abs(q_op @ state + state)) < 1e-14
    mapped = psi.matrix @ state
    assert np.linalg.norm(mapped) > 0
    assert np.max(np.abs(q_op @ mapped)) < 1e-14
