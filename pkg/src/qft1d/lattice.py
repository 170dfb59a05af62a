"""Periodic lattice, natural-unit systems, and field containers.

Positions live on a uniform periodic lattice centred on zero, momenta on
its exact Fourier dual p_n = 2*pi*n/L.  All integrals are plain Riemann
sums with weight dx; together with the exact dual lattice this keeps the
discrete transforms unitary and the plane-wave mode sums exactly
orthonormal, so no higher-order quadrature is used anywhere.

Momentum arrays are stored in FFT ordering (0, 1, ..., -1) so that
coefficient vectors, mode tables and evolution matrices all share one
index convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, ContractViolationError

#: diagonal weights of the two supported metrics, applied between the
#: upper and lower spinor components in every pseudo scalar product
SIGMA_WEIGHTS = {
    "identity": np.array([1.0, 1.0]),
    "tau3": np.array([1.0, -1.0]),
}


@dataclass(frozen=True)
class UnitSystem:
    """Natural-unit system with hbar fixed to one.

    Two presets are provided: atomic units (c = 137.036, m = 1) and
    Compton units (c = 1, m = 1, lengths measured in the Compton
    wavelength).
    """

    c: float
    m: float
    hbar: float = 1.0
    name: str = "custom"

    @property
    def lam(self) -> float:
        """Compton wavelength hbar / (m c)."""
        return self.hbar / (self.m * self.c)

    @property
    def mc2(self) -> float:
        """Rest energy m c**2."""
        return self.m * self.c ** 2

    @classmethod
    def atomic(cls) -> "UnitSystem":
        return cls(c=137.036, m=1.0, name="atomic")

    @classmethod
    def compton(cls) -> "UnitSystem":
        return cls(c=1.0, m=1.0, name="compton")

    @classmethod
    def from_name(cls, name: str) -> "UnitSystem":
        key = name.strip().lower().replace("-units", "")
        if key == "atomic":
            return cls.atomic()
        if key == "compton":
            return cls.compton()
        raise ConfigurationError(f"unknown unit system {name!r}")


@dataclass(frozen=True, eq=False)
class Grid:
    """Periodic position lattice with its Fourier-dual momentum lattice."""

    n_points: int
    box_length: float
    dx: float
    x: np.ndarray  # ascending, x[0] = -box_length/2
    p: np.ndarray  # FFT ordering, p_n = 2*pi*n/box_length

    def compatible(self, other: "Grid") -> bool:
        return (
            self.n_points == other.n_points
            and self.box_length == other.box_length
        )

    @property
    def dp(self) -> float:
        return 2.0 * np.pi / self.box_length

    @property
    def p_max(self) -> float:
        return np.pi / self.dx


def make_grid(n_points: int, box_length: float, units: UnitSystem | None = None) -> Grid:
    """Build a periodic lattice of ``n_points`` sites spanning ``box_length``.

    ``n_points`` must be a power of two (spectral transform requirement)
    and at least 8.  The ``units`` argument is accepted for interface
    symmetry; the lattice geometry itself is unit-agnostic.
    """
    if n_points < 8 or (n_points & (n_points - 1)) != 0:
        raise ConfigurationError(
            f"n_points must be a power of two >= 8, got {n_points}"
        )
    if box_length <= 0:
        raise ConfigurationError(f"box_length must be positive, got {box_length}")
    dx = box_length / n_points
    x = (np.arange(n_points) - n_points // 2) * dx
    p = 2.0 * np.pi * np.fft.fftfreq(n_points, d=dx)
    return Grid(n_points=n_points, box_length=float(box_length), dx=dx, x=x, p=p)


class SpinorField:
    """Two-component complex field sampled on a :class:`Grid`.

    Holds either a Dirac spinor or a Feshbach-Villars doublet; the
    interpretation is supplied by the operations acting on it.
    """

    __slots__ = ("grid", "data")

    def __init__(self, grid: Grid, upper: np.ndarray, lower: np.ndarray):
        upper = np.asarray(upper, dtype=complex)
        lower = np.asarray(lower, dtype=complex)
        if upper.shape != (grid.n_points,) or lower.shape != (grid.n_points,):
            raise ContractViolationError("component arrays must match the grid size")
        self.grid = grid
        self.data = np.stack([upper, lower])

    @classmethod
    def from_data(cls, grid: Grid, data: np.ndarray) -> "SpinorField":
        obj = cls.__new__(cls)
        obj.grid = grid
        obj.data = np.asarray(data, dtype=complex)
        if obj.data.shape != (2, grid.n_points):
            raise ContractViolationError("data must have shape (2, n_points)")
        return obj

    @property
    def upper(self) -> np.ndarray:
        return self.data[0]

    @property
    def lower(self) -> np.ndarray:
        return self.data[1]

    def copy(self) -> "SpinorField":
        return SpinorField.from_data(self.grid, self.data.copy())


def pseudo_inner(f: SpinorField, g: SpinorField, sigma: str = "identity") -> complex:
    """Pseudo scalar product sum_x dx * f(x)^dagger sigma g(x).

    ``sigma`` selects the metric: ``"identity"`` (Dirac probability
    metric) or ``"tau3"`` (Klein-Gordon charge metric).
    """
    if sigma not in SIGMA_WEIGHTS:
        raise ConfigurationError(f"sigma must be 'identity' or 'tau3', got {sigma!r}")
    if not f.grid.compatible(g.grid):
        raise ContractViolationError("fields live on different grids")
    w = SIGMA_WEIGHTS[sigma]
    acc = np.sum(w[:, None] * np.conj(f.data) * g.data)
    return complex(acc * f.grid.dx)


@dataclass
class DensityField:
    """Real density sampled on the grid, tagged by which density it is."""

    grid: Grid
    values: np.ndarray
    tag: str
    t: float = 0.0

    def integral(self) -> float:
        return float(np.sum(self.values) * self.grid.dx)

    def peak(self) -> float:
        return float(np.max(np.abs(self.values)))
