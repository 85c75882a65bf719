"""
Models for the discretization grids.
Defines the Cartesian square grid, the radial grid on (0, ∞) and the polar
product grid used by the moving-frame forms.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Tuple

import numpy as np

from uzu.utils.errors import InvalidInputError

SPACING_MODES = ("uniform", "geometric")


@dataclass(frozen=True)
class Grid2D:
    """
    Uniform tensor grid on the square [-X, X]².
    Axis 0 of node arrays runs along x1, axis 1 along x2.
    """

    # Half-width X of the square
    half_width: float

    # Number of nodes along each side
    n_per_side: int

    def __post_init__(self):
        if not np.isfinite(self.half_width) or self.half_width <= 0:
            raise InvalidInputError(f"half_width must be positive, got {self.half_width}")
        if int(self.n_per_side) != self.n_per_side or self.n_per_side < 3:
            raise InvalidInputError(f"n_per_side must be an integer >= 3, got {self.n_per_side}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.n_per_side - 1)

    @property
    def node_count(self) -> int:
        return self.n_per_side**2

    @cached_property
    def coords(self) -> np.ndarray:
        """1D node coordinates shared by both axes."""
        return np.linspace(-self.half_width, self.half_width, self.n_per_side)

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """Return (x1, x2) node coordinate arrays of shape (n, n)."""
        return np.meshgrid(self.coords, self.coords, indexing="ij")

    def points(self) -> np.ndarray:
        """Return node positions as an array of shape (n, n, 2)."""
        x1, x2 = self.mesh()
        return np.stack([x1, x2], axis=-1)

    def refined(self) -> "Grid2D":
        """Same square with the spacing halved."""
        return Grid2D(self.half_width, 2 * self.n_per_side - 1)

    def descriptor(self) -> Dict[str, Any]:
        return {"grid_x": self.half_width, "grid_n": self.n_per_side}


@dataclass(frozen=True)
class RadialGrid:
    """
    Grid on [rho_min, rho_max] ⊂ (0, ∞).
    Uniform grids are equispaced in ρ, geometric grids are equispaced in ln ρ.
    """

    # First node, strictly positive
    rho_min: float

    # Last node
    rho_max: float

    # Number of nodes
    n: int

    # "uniform" or "geometric"
    spacing_mode: str = "geometric"

    def __post_init__(self):
        if not (np.isfinite(self.rho_min) and np.isfinite(self.rho_max)):
            raise InvalidInputError("radial grid bounds must be finite")
        if self.rho_min <= 0:
            raise InvalidInputError(f"rho_min must be positive, got {self.rho_min}")
        if self.rho_max <= self.rho_min:
            raise InvalidInputError(
                f"rho_max must exceed rho_min, got [{self.rho_min}, {self.rho_max}]"
            )
        if int(self.n) != self.n or self.n < 3:
            raise InvalidInputError(f"radial grid needs an integer n >= 3, got {self.n}")
        if self.spacing_mode not in SPACING_MODES:
            raise InvalidInputError(
                f"spacing_mode must be one of {SPACING_MODES}, got {self.spacing_mode!r}"
            )

    @property
    def is_geometric(self) -> bool:
        return self.spacing_mode == "geometric"

    @cached_property
    def nodes(self) -> np.ndarray:
        if self.is_geometric:
            nodes = np.geomspace(self.rho_min, self.rho_max, self.n)
        else:
            nodes = np.linspace(self.rho_min, self.rho_max, self.n)
        # pin the end points exactly
        nodes[0], nodes[-1] = self.rho_min, self.rho_max
        nodes.setflags(write=False)
        return nodes

    @cached_property
    def natural_coords(self) -> np.ndarray:
        """Coordinates in which the grid is equispaced: ρ or ln ρ."""
        if self.is_geometric:
            return np.log(self.nodes)
        return np.asarray(self.nodes)

    @property
    def natural_spacing(self) -> float:
        if self.is_geometric:
            return float(np.log(self.rho_max / self.rho_min) / (self.n - 1))
        return float((self.rho_max - self.rho_min) / (self.n - 1))

    def scaled(self, factor: float) -> "RadialGrid":
        """Grid with every node multiplied by factor."""
        if factor <= 0:
            raise InvalidInputError(f"scale factor must be positive, got {factor}")
        return RadialGrid(self.rho_min * factor, self.rho_max * factor, self.n, self.spacing_mode)

    def refined(self) -> "RadialGrid":
        """Same interval with the spacing halved (2n - 1 nodes)."""
        return RadialGrid(self.rho_min, self.rho_max, 2 * self.n - 1, self.spacing_mode)

    def covers(self, lo: float, hi: float) -> bool:
        return self.rho_min <= lo and hi <= self.rho_max

    def descriptor(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "rho_min": self.rho_min,
            "rho_max": self.rho_max,
            "spacing_mode": self.spacing_mode,
        }


@dataclass(frozen=True)
class PolarGrid:
    """Product of a radial grid with a uniform periodic grid in the polar angle ψ."""

    radial: RadialGrid

    # Number of equispaced angles in [0, 2π)
    n_psi: int

    def __post_init__(self):
        if int(self.n_psi) != self.n_psi or self.n_psi < 4:
            raise InvalidInputError(f"n_psi must be an integer >= 4, got {self.n_psi}")

    @cached_property
    def psi(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n_psi) / self.n_psi

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """Return (ρ, ψ) arrays of shape (n, n_psi)."""
        return np.meshgrid(self.radial.nodes, self.psi, indexing="ij")

    @property
    def max_mode(self) -> int:
        """Largest Fourier mode resolved without aliasing."""
        return (self.n_psi - 1) // 2
