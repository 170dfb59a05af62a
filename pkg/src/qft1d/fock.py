"""Exact operator-algebra checks on occupancy-truncated Fock spaces.

A finite set of particle modes and an equal set of anti-particle modes
are represented on the tensor product of local occupancy spaces.  For
Fermi statistics the ladder matrices carry Jordan-Wigner phase strings,
so all anti-commutators are exact; for Bose statistics the local ladders
are truncated at ``max_occupancy`` and the canonical commutators hold
exactly below the truncation boundary.

The point of the module is to verify, by explicit matrix identities and
independently of any space-time dynamics, that the combined
creation operator  nu^dag = sum_p (a_p b_p^dag + c_p d_p^dag)  raises the
total particle number by exactly one, and that the charge-raising
combination  psi^dag = sum_p (a_p b_p^dag + c_p d_p)  raises the total
charge by exactly one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class FockSpace:
    """Truncated second-quantization space for n particle + n anti-particle modes."""

    n_modes: int
    statistics: str  # 'fermi' or 'bose'
    max_occupancy: int

    def __post_init__(self):
        if self.statistics not in ("fermi", "bose"):
            raise ConfigurationError(f"statistics must be 'fermi' or 'bose', got {self.statistics!r}")
        if self.statistics == "fermi" and self.max_occupancy != 1:
            raise ConfigurationError("fermi statistics requires max_occupancy = 1")
        if self.n_modes < 1 or self.max_occupancy < 1:
            raise ConfigurationError("n_modes and max_occupancy must be >= 1")

    @property
    def n_sites(self) -> int:
        # particle modes occupy sites 0..n-1, anti-particle modes n..2n-1
        return 2 * self.n_modes

    @property
    def local_dim(self) -> int:
        return self.max_occupancy + 1

    @property
    def dim(self) -> int:
        return self.local_dim ** self.n_sites

    def basis_occupations(self) -> list[tuple[int, ...]]:
        """Occupancy tuples in basis order (site 0 most significant)."""
        return list(itertools.product(range(self.local_dim), repeat=self.n_sites))

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v


@dataclass
class FockOperator:
    space: FockSpace
    matrix: np.ndarray

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(self.space, self.matrix @ other.matrix)

    def dagger(self) -> "FockOperator":
        return FockOperator(self.space, self.matrix.conj().T)


def _local_annihilator(local_dim: int) -> np.ndarray:
    a = np.zeros((local_dim, local_dim), dtype=complex)
    for n in range(1, local_dim):
        a[n - 1, n] = np.sqrt(n)
    return a


def _site_operator(space: FockSpace, site: int, local: np.ndarray) -> np.ndarray:
    """Embed a local matrix at ``site``; Jordan-Wigner parity string for fermi."""
    d = space.local_dim
    if space.statistics == "fermi":
        parity = np.diag([1.0, -1.0]).astype(complex)
        before = [parity] * site
    else:
        before = [np.eye(d, dtype=complex)] * site
    after = [np.eye(d, dtype=complex)] * (space.n_sites - site - 1)
    out = np.eye(1, dtype=complex)
    for m in before + [local] + after:
        out = np.kron(out, m)
    return out


def build_ladder(space: FockSpace, mode_index: int, species: str,
                 kind: str) -> FockOperator:
    """Ladder operator for one mode.

    ``species`` is 'particle' or 'antiparticle', ``kind`` is 'create' or
    'annihilate'.
    """
    if not 0 <= mode_index < space.n_modes:
        raise ConfigurationError(f"mode_index {mode_index} out of range")
    if species not in ("particle", "antiparticle"):
        raise ConfigurationError(f"species must be 'particle' or 'antiparticle', got {species!r}")
    if kind not in ("create", "annihilate"):
        raise ConfigurationError(f"kind must be 'create' or 'annihilate', got {kind!r}")
    site = mode_index if species == "particle" else space.n_modes + mode_index
    local = _local_annihilator(space.local_dim)
    if kind == "create":
        local = local.conj().T
    return FockOperator(space, _site_operator(space, site, local))


def number_operator(space: FockSpace) -> FockOperator:
    """Total number of quanta, particles plus anti-particles."""
    total = np.zeros((space.dim, space.dim), dtype=complex)
    for i in range(space.n_modes):
        for sp in ("particle", "antiparticle"):
            c = build_ladder(space, i, sp, "create").matrix
            a = build_ladder(space, i, sp, "annihilate").matrix
            total += c @ a
    return FockOperator(space, total)


def charge_operator(space: FockSpace) -> FockOperator:
    """Total charge: particle count minus anti-particle count."""
    total = np.zeros((space.dim, space.dim), dtype=complex)
    for i in range(space.n_modes):
        bp = build_ladder(space, i, "particle", "create").matrix
        b = build_ladder(space, i, "particle", "annihilate").matrix
        dp = build_ladder(space, i, "antiparticle", "create").matrix
        d = build_ladder(space, i, "antiparticle", "annihilate").matrix
        total += bp @ b - dp @ d
    return FockOperator(space, total)


def build_nu_dagger(space: FockSpace, coeffs_phi, coeffs_phibar) -> FockOperator:
    """Number-raising combination sum_p (a_p b_p^dag + c_p d_p^dag)."""
    coeffs_phi = np.asarray(coeffs_phi, dtype=complex)
    coeffs_phibar = np.asarray(coeffs_phibar, dtype=complex)
    if coeffs_phi.shape != (space.n_modes,) or coeffs_phibar.shape != (space.n_modes,):
        raise ConfigurationError("one coefficient per mode is required")
    total = np.zeros((space.dim, space.dim), dtype=complex)
    for i in range(space.n_modes):
        total += coeffs_phi[i] * build_ladder(space, i, "particle", "create").matrix
        total += coeffs_phibar[i] * build_ladder(space, i, "antiparticle", "create").matrix
    return FockOperator(space, total)


def build_psi_dagger(space: FockSpace, coeffs_particle, coeffs_antiparticle) -> FockOperator:
    """Charge-raising combination sum_p (a_p b_p^dag + c_p d_p).

    Creates a particle or annihilates an anti-particle; either branch
    raises the total charge by one.
    """
    coeffs_particle = np.asarray(coeffs_particle, dtype=complex)
    coeffs_antiparticle = np.asarray(coeffs_antiparticle, dtype=complex)
    if coeffs_particle.shape != (space.n_modes,) or coeffs_antiparticle.shape != (space.n_modes,):
        raise ConfigurationError("one coefficient per mode is required")
    total = np.zeros((space.dim, space.dim), dtype=complex)
    for i in range(space.n_modes):
        total += coeffs_particle[i] * build_ladder(space, i, "particle", "create").matrix
        total += coeffs_antiparticle[i] * build_ladder(space, i, "antiparticle", "annihilate").matrix
    return FockOperator(space, total)


@dataclass
class RaisingReport:
    """Outcome of an exact eigenvalue-shift check."""

    ok: bool
    max_defect: float
    violating_states: list = field(default_factory=list)

    def __str__(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} (max defect {self.max_defect:.3e}, {len(self.violating_states)} violating states)"


def _raising_defect(space: FockSpace, generator: np.ndarray,
                    raiser: np.ndarray, tol: float) -> RaisingReport:
    defect = generator @ raiser - raiser @ (generator + np.eye(space.dim))
    col_err = np.max(np.abs(defect), axis=0)
    bad = np.nonzero(col_err > tol)[0]
    occupations = space.basis_occupations()
    return RaisingReport(
        ok=bad.size == 0,
        max_defect=float(np.max(col_err)) if col_err.size else 0.0,
        violating_states=[occupations[j] for j in bad],
    )


def check_number_raising(space: FockSpace, nu_dagger: FockOperator,
                         tol: float = 1e-13) -> RaisingReport:
    """Verify N nu^dag = nu^dag (N + 1) on every basis state.

    Exact also at the Bose truncation boundary: components pushed past
    the truncation are zero and contribute no defect.
    """
    return _raising_defect(space, number_operator(space).matrix,
                           nu_dagger.matrix, tol)


def check_charge_raising(space: FockSpace, psi_dagger: FockOperator,
                         tol: float = 1e-13) -> RaisingReport:
    """Verify Q psi^dag = psi^dag (Q + 1) on every basis state."""
    return _raising_defect(space, charge_operator(space).matrix,
                           psi_dagger.matrix, tol)
