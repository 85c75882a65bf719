"""
Closed forms of the skyrmion and the maps built from it.

All maps are vectorized: points are arrays whose last axis holds (x1, x2)
and values are arrays whose last axis holds the three components.
"""

import logging
from typing import Callable, Tuple

import numpy as np

from uzu.models.fields import MagnetizationField
from uzu.models.grids import Grid2D
from uzu.utils.errors import InvalidInputError

logger = logging.getLogger(__name__)

PointMap = Callable[[np.ndarray], np.ndarray]


class SkyrmionProfile:
    """
    Radial angle θ(ρ) of the hedgehog, h = (-sinψ sinθ, cosψ sinθ, cosθ).

    sinθ = 2ρ/(ρ²+1), cosθ = (ρ²-1)/(ρ²+1), θ(0) = π, θ(∞) = 0.
    """

    @staticmethod
    def _rho(rho) -> np.ndarray:
        rho = np.asarray(rho, dtype=float)
        if np.any(rho < 0) or not np.all(np.isfinite(rho)):
            raise InvalidInputError("profile radius must be finite and nonnegative")
        return rho

    def sin_theta(self, rho) -> np.ndarray:
        rho = self._rho(rho)
        return 2.0 * rho / (rho**2 + 1.0)

    def cos_theta(self, rho) -> np.ndarray:
        rho = self._rho(rho)
        return (rho**2 - 1.0) / (rho**2 + 1.0)

    def one_minus_cos(self, rho) -> np.ndarray:
        """1 - cosθ without cancellation at large ρ."""
        rho = self._rho(rho)
        return 2.0 / (rho**2 + 1.0)

    def theta(self, rho) -> np.ndarray:
        return np.arctan2(self.sin_theta(rho), self.cos_theta(rho))

    def dtheta(self, rho) -> np.ndarray:
        """θ′ = -2/(ρ²+1) = -sinθ/ρ."""
        rho = self._rho(rho)
        return -2.0 / (rho**2 + 1.0)

    def d2theta(self, rho) -> np.ndarray:
        rho = self._rho(rho)
        return 4.0 * rho / (rho**2 + 1.0) ** 2


PROFILE = SkyrmionProfile()


def polar(x) -> Tuple[np.ndarray, np.ndarray]:
    """Split points into (ρ, ψ)."""
    x = np.asarray(x, dtype=float)
    return np.hypot(x[..., 0], x[..., 1]), np.arctan2(x[..., 1], x[..., 0])


def hedgehog(x) -> np.ndarray:
    """h(x) = (-2x2, 2x1, |x|² - 1) / (1 + |x|²)."""
    x = np.asarray(x, dtype=float)
    x1, x2 = x[..., 0], x[..., 1]
    sq = x1**2 + x2**2
    q = 1.0 + sq
    return np.stack([-2.0 * x2 / q, 2.0 * x1 / q, (sq - 1.0) / q], axis=-1)


def skyrmion_at_scale(x, scale: float) -> np.ndarray:
    """h^λ(x) = h(x/λ)."""
    if not np.isfinite(scale) or scale <= 0:
        raise InvalidInputError(f"skyrmion scale must be positive, got {scale}")
    return hedgehog(np.asarray(x, dtype=float) / scale)


def hedgehog_polar(rho, psi) -> np.ndarray:
    s, c = PROFILE.sin_theta(rho), PROFILE.cos_theta(rho)
    psi = np.asarray(psi, dtype=float)
    return np.stack([-np.sin(psi) * s, np.cos(psi) * s, c * np.ones_like(psi)], axis=-1)


def frame(rho, psi) -> Tuple[np.ndarray, np.ndarray]:
    """
    Moving frame of the tangent plane of h at (ρ, ψ).

    J1 = (cosψ, sinψ, 0), J2 = (-sinψ cosθ, cosψ cosθ, -sinθ); (J1, J2, h)
    is a right-handed orthonormal basis.
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise InvalidInputError("the moving frame is undefined at rho <= 0")
    psi = np.asarray(psi, dtype=float) * np.ones_like(rho)
    s, c = PROFILE.sin_theta(rho), PROFILE.cos_theta(rho)
    cos_psi, sin_psi = np.cos(psi), np.sin(psi)
    j1 = np.stack([cos_psi, sin_psi, np.zeros_like(psi)], axis=-1)
    j2 = np.stack([-sin_psi * c, cos_psi * c, -s], axis=-1)
    return j1, j2


def _check_coupling(r: float) -> None:
    if not np.isfinite(r) or r <= 0:
        raise InvalidInputError(f"coupling r must be positive, got {r}")


def beltrami_strip(x, r: float) -> np.ndarray:
    """b(x) = (0, 2r x1, r²x1² - 1) / (r²x1² + 1); independent of x2."""
    _check_coupling(r)
    x1 = np.asarray(x, dtype=float)[..., 0]
    d = r**2 * x1**2 + 1.0
    return np.stack([np.zeros_like(x1), 2.0 * r * x1 / d, (r**2 * x1**2 - 1.0) / d], axis=-1)


def beltrami_strip_derivative(x1, r: float) -> np.ndarray:
    """Analytic ∂1 b at the given x1 values (∂2 b vanishes)."""
    _check_coupling(r)
    x1 = np.asarray(x1, dtype=float)
    d = r**2 * x1**2 + 1.0
    return np.stack(
        [np.zeros_like(x1), 2.0 * r * (1.0 - r**2 * x1**2) / d**2, 4.0 * r**2 * x1 / d**2],
        axis=-1,
    )


def stitched_map(x, r: float, L: float) -> np.ndarray:
    """
    The strip map n_L: b on |x2| <= L, capped by half-skyrmions at scale 1/r
    translated to x2 = ±L. Continuous since b(x) = h^{1/r}(x1, 0).
    """
    _check_coupling(r)
    if not np.isfinite(L) or L < 0:
        raise InvalidInputError(f"strip half-width must be nonnegative, got {L}")
    x = np.asarray(x, dtype=float)
    x2 = x[..., 1]
    scale = 1.0 / r
    upper = skyrmion_at_scale(np.stack([x[..., 0], x2 - L], axis=-1), scale)
    lower = skyrmion_at_scale(np.stack([x[..., 0], x2 + L], axis=-1), scale)
    strip = beltrami_strip(x, r)
    out = np.where((x2 > L)[..., None], upper, strip)
    return np.where((x2 < -L)[..., None], lower, out)


def constant_e3(x) -> np.ndarray:
    """The ground state n ≡ e3."""
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape[:-1] + (3,))
    out[..., 2] = 1.0
    return out


def sample_field(point_map: PointMap, grid: Grid2D) -> MagnetizationField:
    """Evaluate a vectorized map at every node of the grid."""
    values = np.asarray(point_map(grid.points()), dtype=float)
    logger.debug(f"Sampled field on {grid.n_per_side}² nodes, X={grid.half_width}")
    return MagnetizationField(grid, values)
