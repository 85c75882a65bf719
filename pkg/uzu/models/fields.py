"""
Models for sampled fields.
Radial test functions, S²-valued magnetizations and tangent perturbations on
Cartesian grids, and frame coefficients on polar grids.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from uzu.models.grids import Grid2D, PolarGrid, RadialGrid
from uzu.utils.errors import InvalidInputError

UNIT_NORM_TOL = 1e-10
TANGENCY_TOL = 1e-10

# A point value of n, h, b, J1 or J2: a length-3 array of unit norm
UnitVec3 = np.ndarray


def unit_vec3(components) -> UnitVec3:
    """Validate and freeze a single unit 3-vector."""
    vec = np.array(components, dtype=float)
    if vec.shape != (3,):
        raise InvalidInputError(f"expected three components, got shape {vec.shape}")
    if abs(np.linalg.norm(vec) - 1.0) > 1e-12:
        raise InvalidInputError(f"vector {vec} does not have unit norm")
    vec.setflags(write=False)
    return vec


def _frozen(values, shape: Tuple[int, ...], what: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.shape != shape:
        raise InvalidInputError(f"{what} has shape {arr.shape}, expected {shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{what} contains non-finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RadialFunction:
    """Real function sampled at the nodes of a radial grid."""

    grid: RadialGrid
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values, (self.grid.n,), "radial values"))

    @classmethod
    def from_callable(cls, grid: RadialGrid, fn: Callable[[np.ndarray], np.ndarray]) -> "RadialFunction":
        return cls(grid, fn(np.asarray(grid.nodes)))

    @classmethod
    def zeros(cls, grid: RadialGrid) -> "RadialFunction":
        return cls(grid, np.zeros(grid.n))

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    def with_values(self, values) -> "RadialFunction":
        return RadialFunction(self.grid, values)

    def support(self) -> Optional[Tuple[float, float]]:
        """Smallest node interval holding every nonzero value, or None for the zero function."""
        nonzero = np.flatnonzero(self.values)
        if nonzero.size == 0:
            return None
        return float(self.nodes[nonzero[0]]), float(self.nodes[nonzero[-1]])

    def vanishes_at_ends(self) -> bool:
        return self.values[0] == 0.0 and self.values[-1] == 0.0


@dataclass(frozen=True, eq=False)
class MagnetizationField:
    """S²-valued map sampled on a Cartesian grid; values have shape (n, n, 3)."""

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        n = self.grid.n_per_side
        values = _frozen(self.values, (n, n, 3), "magnetization")
        deviation = np.max(np.abs(np.linalg.norm(values, axis=-1) - 1.0))
        if deviation > UNIT_NORM_TOL:
            raise InvalidInputError(f"magnetization is not unit-valued (max deviation {deviation:.3e})")
        object.__setattr__(self, "values", values)

    def component(self, j: int) -> np.ndarray:
        return self.values[..., j]


@dataclass(frozen=True, eq=False)
class TangentField2D:
    """
    Perturbation field (ξ or φ) on a Cartesian grid; values have shape (n, n, 3).
    When a base field is attached, the perturbation is checked to be
    pointwise orthogonal to it.
    """

    grid: Grid2D
    values: np.ndarray

    # Field the perturbation is tangent to, if any
    base: Optional[MagnetizationField] = field(default=None)

    def __post_init__(self):
        n = self.grid.n_per_side
        values = _frozen(self.values, (n, n, 3), "tangent field")
        if self.base is not None:
            if self.base.grid != self.grid:
                raise InvalidInputError("tangent field and base field live on different grids")
            dots = np.max(np.abs(np.sum(values * self.base.values, axis=-1)))
            if dots > TANGENCY_TOL:
                raise InvalidInputError(f"field is not tangent to its base (max |φ·n| = {dots:.3e})")
        object.__setattr__(self, "values", values)

    @property
    def is_tangent(self) -> bool:
        return self.base is not None

    def max_dot(self, other: MagnetizationField) -> float:
        return float(np.max(np.abs(np.sum(self.values * other.values, axis=-1))))


@dataclass(frozen=True, eq=False)
class PolarField:
    """
    Frame coefficients (u1, u2) of a tangent perturbation u1 J1 + u2 J2 on a
    polar grid; arrays have shape (n_rho, n_psi). modes lists the Fourier
    modes the field was built from.
    """

    grid: PolarGrid
    u1: np.ndarray
    u2: np.ndarray
    modes: Tuple[int, ...] = ()

    def __post_init__(self):
        shape = (self.grid.radial.n, self.grid.n_psi)
        object.__setattr__(self, "u1", _frozen(self.u1, shape, "u1"))
        object.__setattr__(self, "u2", _frozen(self.u2, shape, "u2"))
        modes = tuple(sorted(set(int(k) for k in self.modes)))
        if any(k < 0 or k > self.grid.max_mode for k in modes):
            raise InvalidInputError(f"modes {modes} not resolved by {self.grid.n_psi} angles")
        object.__setattr__(self, "modes", modes)
