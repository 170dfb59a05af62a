"""Compact oracle suite runnable from the command line.

Each check is independent of the code path it validates: mode
orthonormality is summed explicitly, the free evolution matrix is
compared against the analytic phases, the assembled charge-blind density
is compared against the first-quantized density of the analytically
evolved packet, and the operator-algebra identities are verified as
exact matrix equations.
"""

from __future__ import annotations

import numpy as np

from .densities import number_report, rho_blind
from .fock import (FockSpace, build_nu_dagger, build_psi_dagger,
                   check_charge_raising, check_number_raising)
from .lattice import SpinorField, UnitSystem, make_grid, pseudo_inner
from .modes import FieldKind, Potential, make_basis, tanh_step
from .propagation import build_evolution_matrix, free_evolution_matrix, metric_signature
from .wavepackets import (PacketSpec, build_packet, decompose,
                          evolve_first_quantized, first_quantized_density,
                          reconstruct)


def _check_transform_roundtrip(results, rng):
    units = UnitSystem.compton()
    grid = make_grid(128, 16.0, units)
    for kind in FieldKind:
        basis = make_basis(kind, grid, units)
        data = rng.standard_normal((2, 128)) + 1j * rng.standard_normal((2, 128))
        c_pos, c_neg = basis.analyze(data)
        err = np.max(np.abs(basis.synthesize(c_pos, c_neg) - data))
        results.append((f"transform roundtrip ({kind.value})", err < 1e-10, err))


def _check_orthonormality(results):
    units = UnitSystem.compton()
    grid = make_grid(64, 8.0, units)
    for kind in FieldKind:
        basis = make_basis(kind, grid, units)
        eye = np.eye(64, dtype=complex)
        zeros = np.zeros_like(eye)
        pos = basis.synthesize(eye, zeros)
        neg = basis.synthesize(zeros, eye)
        w = kind.sigma_weights
        gram_pp = np.einsum("jxp,j,jxq->pq", np.conj(pos), w, pos) * grid.dx
        gram_nn = np.einsum("jxp,j,jxq->pq", np.conj(neg), w, neg) * grid.dx
        gram_pn = np.einsum("jxp,j,jxq->pq", np.conj(pos), w, neg) * grid.dx
        err = max(np.max(np.abs(gram_pp - np.eye(64))),
                  np.max(np.abs(gram_nn + kind.epsilon * np.eye(64))),
                  np.max(np.abs(gram_pn)))
        results.append((f"mode pseudo-orthonormality ({kind.value})", err < 1e-10, err))


def _check_free_matrix(results):
    units = UnitSystem.compton()
    grid = make_grid(64, 8.0, units)
    for kind in FieldKind:
        basis = make_basis(kind, grid, units)
        t = 0.37
        U = build_evolution_matrix(basis, Potential.zero(grid), t, t / 8)
        expect = free_evolution_matrix(basis, t)
        err = np.max(np.abs(U.full - expect.full))
        results.append((f"free evolution matrix ({kind.value})", err < 1e-9, err))


def _check_free_field_equivalence(results):
    units = UnitSystem.compton()
    grid = make_grid(256, 16.0, units)
    for kind in FieldKind:
        basis = make_basis(kind, grid, units)
        psi = build_packet(PacketSpec(x0=0.0, width=1.0, p0=3.0), grid, units, kind)
        spectrum = decompose(psi, basis)
        t = 0.8
        U = free_evolution_matrix(basis, t)
        blind = rho_blind(U, spectrum, basis)
        ref = first_quantized_density(evolve_first_quantized(spectrum, basis, t),
                                      kind, t)
        err = np.max(np.abs(blind.values - ref.values)) / np.max(np.abs(ref.values))
        results.append((f"free-field density equivalence ({kind.value})", err < 1e-8, err))


def _check_metric_preservation(results):
    units = UnitSystem.compton()
    grid = make_grid(128, 16.0, units)
    pot = tanh_step(grid, 3.0, 0.0, 0.5)
    for kind in FieldKind:
        basis = make_basis(kind, grid, units)
        U = build_evolution_matrix(basis, pot, 0.5, 1.0 / 512)
        g = metric_signature(kind, 64 * 2)
        defect = np.max(np.abs(U.full.conj().T @ (g[:, None] * U.full) - np.diag(g)))
        results.append((f"pseudo-unitarity ({kind.value})", defect < 1e-8, defect))


def _check_fock(results, rng):
    for stats, n_modes, max_occ in (("fermi", 2, 1), ("bose", 2, 3)):
        space = FockSpace(n_modes=n_modes, statistics=stats, max_occupancy=max_occ)
        a = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
        b = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
        rep_n = check_number_raising(space, build_nu_dagger(space, a, b))
        rep_q = check_charge_raising(space, build_psi_dagger(space, a, b))
        results.append((f"number raising ({stats})", rep_n.ok, rep_n.max_defect))
        results.append((f"charge raising ({stats})", rep_q.ok, rep_q.max_defect))


def run_selftest(verbose: bool = True) -> bool:
    """Run the oracle suite; returns True when every check passes."""
    rng = np.random.default_rng(20240811)
    results: list[tuple[str, bool, float]] = []
    _check_transform_roundtrip(results, rng)
    _check_orthonormality(results)
    _check_free_matrix(results)
    _check_free_field_equivalence(results)
    _check_metric_preservation(results)
    _check_fock(results, rng)
    ok = True
    for name, passed, err in results:
        ok &= passed
        if verbose:
            status = "PASS" if passed else "FAIL"
            print(f"[{status}] {name} (residual {err:.3e})")
    return ok
