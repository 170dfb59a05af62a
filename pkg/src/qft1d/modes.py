"""Free Hamiltonians, their plane-wave eigenmodes, and background potentials.

Per lattice momentum both supported wave equations reduce to a 2x2 matrix
h(p) with h(p)^2 = E_p^2 * I, E_p = sqrt(p^2 c^2 + m^2 c^4):

* Dirac (one effective spatial dimension, no spin flip):
  h(p) = c p sigma_1 + m c^2 sigma_3
* Klein-Gordon in Hamiltonian (Feshbach-Villars) form:
  h(p) = (p^2 / 2m)(tau_3 + i tau_2) + m c^2 tau_3

The h^2 = E^2 identity yields closed forms for the eigenvectors and for
exp(-i h t), so every kinetic operation in the package is exact on the
lattice up to rounding.

Mode normalisation is fixed by the lattice pseudo-orthonormality
<phi_p|sigma|phi_q> = delta_pq, <nphi_p|sigma|nphi_q> = -eps delta_pq,
cross terms zero, where eps = -1 (Dirac) / +1 (Klein-Gordon).  This is
the convention every identity downstream relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigurationError, ContractViolationError
from .lattice import SIGMA_WEIGHTS, Grid, SpinorField, UnitSystem


class FieldKind(str, Enum):
    DIRAC = "dirac"
    KLEIN_GORDON = "klein_gordon"

    @property
    def epsilon(self) -> int:
        """Statistics sign: -1 for spin-1/2 fermions, +1 for spin-0 bosons."""
        return -1 if self is FieldKind.DIRAC else +1

    @property
    def sigma(self) -> str:
        return "identity" if self is FieldKind.DIRAC else "tau3"

    @property
    def sigma_weights(self) -> np.ndarray:
        return SIGMA_WEIGHTS[self.sigma]

    @classmethod
    def from_name(cls, name: str) -> "FieldKind":
        key = name.strip().lower()
        aliases = {"dirac": cls.DIRAC, "kg": cls.KLEIN_GORDON,
                   "klein_gordon": cls.KLEIN_GORDON, "klein-gordon": cls.KLEIN_GORDON}
        if key not in aliases:
            raise ConfigurationError(f"unknown field kind {name!r}")
        return aliases[key]


_BRANCH_SIGN = {"positive": +1.0, "negative": -1.0}


def energy(p, branch: str, units: UnitSystem):
    """Signed eigenenergy +-sqrt(p^2 c^2 + m^2 c^4) of the free Hamiltonian."""
    if branch not in _BRANCH_SIGN:
        raise ConfigurationError(f"branch must be 'positive' or 'negative', got {branch!r}")
    p = np.asarray(p, dtype=float)
    e = np.sqrt((p * units.c) ** 2 + units.mc2 ** 2)
    out = _BRANCH_SIGN[branch] * e
    return float(out) if out.ndim == 0 else out


def hamiltonian_elements(kind: FieldKind, p, units: UnitSystem):
    """Entries (h00, h01, h10, h11) of the momentum-space 2x2 Hamiltonian."""
    p = np.asarray(p, dtype=float)
    mc2 = units.mc2
    if kind is FieldKind.DIRAC:
        cp = units.c * p
        return mc2 + 0 * p, cp, cp, -mc2 + 0 * p
    k = units.hbar ** 2 * p ** 2 / (2.0 * units.m)
    return mc2 + k, k, -k, -(mc2 + k)


def _amplitudes(kind: FieldKind, p, units: UnitSystem):
    """Spinor amplitudes (u_pos, u_neg), each of shape (2,) + p.shape.

    Normalised so that u_pos^dag sigma u_pos = 1 and
    u_neg^dag sigma u_neg = -eps, with vanishing cross overlap.
    """
    p = np.asarray(p, dtype=float)
    mc2 = units.mc2
    e = np.sqrt((p * units.c) ** 2 + mc2 ** 2)
    if kind is FieldKind.DIRAC:
        norm = np.sqrt(2.0 * e * (e + mc2))
        u_pos = np.stack([(e + mc2) / norm, units.c * p / norm])
        u_neg = np.stack([-units.c * p / norm, (e + mc2) / norm])
    else:
        norm = 2.0 * np.sqrt(mc2 * e)
        u_pos = np.stack([(mc2 + e) / norm, (mc2 - e) / norm])
        u_neg = np.stack([(mc2 - e) / norm, (mc2 + e) / norm])
    return u_pos.astype(complex), u_neg.astype(complex)


@dataclass(frozen=True)
class Mode:
    """Single plane-wave eigenmode of the free Hamiltonian."""

    p: float
    branch: str
    energy: float
    spinor_amplitude: np.ndarray  # x-independent 2-component factor


def _require_on_lattice(p: float, grid: Grid) -> float:
    if np.min(np.abs(grid.p - p)) > 1e-9 * grid.dp:
        raise ContractViolationError(f"momentum {p} is not on the lattice")
    return float(p)


def dirac_mode(p: float, branch: str, grid: Grid, units: UnitSystem) -> Mode:
    """Eigenmode of c p sigma_1 + m c^2 sigma_3 at lattice momentum ``p``."""
    p = _require_on_lattice(p, grid)
    u_pos, u_neg = _amplitudes(FieldKind.DIRAC, p, units)
    amp = u_pos if branch == "positive" else u_neg
    return Mode(p, branch, energy(p, branch, units), amp)


def kg_mode(p: float, branch: str, grid: Grid, units: UnitSystem) -> Mode:
    """Eigenmode of the Feshbach-Villars 2x2 matrix at lattice momentum ``p``."""
    p = _require_on_lattice(p, grid)
    u_pos, u_neg = _amplitudes(FieldKind.KLEIN_GORDON, p, units)
    amp = u_pos if branch == "positive" else u_neg
    return Mode(p, branch, energy(p, branch, units), amp)


class ModeBasis:
    """All positive and negative energy modes over one momentum lattice.

    Provides the two basis changes every other module uses:
    ``synthesize`` (coefficients -> position fields) and ``analyze``
    (position fields -> coefficients).  Coefficient arrays are indexed by
    momentum in FFT ordering; an optional trailing axis carries a batch
    of columns.
    """

    def __init__(self, kind: FieldKind, grid: Grid, units: UnitSystem):
        self.kind = kind
        self.grid = grid
        self.units = units
        self.u_pos, self.u_neg = _amplitudes(kind, grid.p, units)
        self.energies = np.sqrt((grid.p * units.c) ** 2 + units.mc2 ** 2)
        # e^{i p x0} phase that relates the FFT index convention to the
        # physical positions x_l = x0 + l dx
        self._phase = np.exp(1j * grid.p * grid.x[0])

    @property
    def n_modes(self) -> int:
        return self.grid.n_points

    def synthesize(self, c_pos: np.ndarray, c_neg: np.ndarray) -> np.ndarray:
        """Position fields of sum_p c_pos(p) phi_p + c_neg(p) nphi_p.

        Returns an array of shape (2, n_points) or (2, n_points, k) when
        the coefficient arrays carry a batch axis.
        """
        c_pos = np.asarray(c_pos, dtype=complex)
        c_neg = np.asarray(c_neg, dtype=complex)
        batch = c_pos.ndim == 2
        up = self.u_pos[:, :, None] if batch else self.u_pos
        un = self.u_neg[:, :, None] if batch else self.u_neg
        ph = self._phase[:, None] if batch else self._phase
        m = up * c_pos + un * c_neg
        scale = self.grid.n_points / np.sqrt(self.grid.box_length)
        return np.fft.ifft(m * ph, axis=1) * scale

    def analyze(self, data: np.ndarray):
        """Expansion coefficients (c_pos, c_neg) of a position-space field.

        The negative-branch coefficients already include the -eps dual
        weight, i.e. the returned pair reconstructs the field through
        ``synthesize`` directly.
        """
        data = np.asarray(data, dtype=complex)
        batch = data.ndim == 3
        ph = self._phase[:, None] if batch else self._phase
        scale = np.sqrt(self.grid.box_length) / self.grid.n_points
        m = np.fft.fft(data, axis=1) * np.conj(ph) * scale
        w = self.kind.sigma_weights
        up = self.u_pos[:, :, None] if batch else self.u_pos
        un = self.u_neg[:, :, None] if batch else self.u_neg
        wc = w[:, None, None] if batch else w[:, None]
        c_pos = np.sum(np.conj(up) * wc * m, axis=0)
        c_neg = -self.kind.epsilon * np.sum(np.conj(un) * wc * m, axis=0)
        return c_pos, c_neg

    def field(self, c_pos: np.ndarray, c_neg: np.ndarray) -> SpinorField:
        return SpinorField.from_data(self.grid, self.synthesize(c_pos, c_neg))


def make_basis(kind: FieldKind, grid: Grid, units: UnitSystem) -> ModeBasis:
    return ModeBasis(kind, grid, units)


@dataclass
class Potential:
    """Static background potential V(x) entering both Hamiltonians as V * I."""

    grid: Grid
    values: np.ndarray
    descriptor: dict | None = None

    def is_zero(self) -> bool:
        return not np.any(self.values)

    @classmethod
    def zero(cls, grid: Grid) -> "Potential":
        return cls(grid, np.zeros(grid.n_points), None)


def tanh_step(grid: Grid, v0: float, d: float, alpha: float) -> Potential:
    """Smooth electrostatic step V(x) = v0 (1 + tanh((x - d)/alpha)) / 2."""
    if alpha <= 0:
        raise ConfigurationError(f"alpha must be positive, got {alpha}")
    values = 0.5 * v0 * (1.0 + np.tanh((grid.x - d) / alpha))
    return Potential(grid, values, {"v0": v0, "d": d, "alpha": alpha})
