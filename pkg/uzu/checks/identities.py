"""
Checks on the Cartesian energy: the Euler–Lagrange equation of the scaled
skyrmion, the Bogomol'nyi-type factorization and the profile closed forms.
"""

import logging
from typing import Tuple

import numpy as np

from uzu.checks import register_check
from uzu.checks.base import BaseCheck
from uzu.core.energy import el_residual_study, factorization_sides, perturb_field
from uzu.core.numerics import central_diff
from uzu.core.skyrmion import PROFILE, sample_field, skyrmion_at_scale
from uzu.models.fields import MagnetizationField, TangentField2D
from uzu.models.grids import Grid2D, RadialGrid
from uzu.models.run_config import RunConfig
from uzu.utils.config import VERIFY_N_PER_SIDE, VERIFY_WIDTH_FACTOR

logger = logging.getLogger(__name__)

# Number of random perturbations the factorization is checked on
N_PERTURBED = 10


def verify_grid(config: RunConfig, scale: float) -> Grid2D:
    half_width = config.half_width or VERIFY_WIDTH_FACTOR * scale
    return Grid2D(half_width, VERIFY_N_PER_SIDE)


def random_tangent_field(base: MagnetizationField, rng: np.random.Generator, width: float, n_bumps: int = 4) -> TangentField2D:
    """Gaussian bumps with random vector amplitudes, projected onto the tangent planes of base."""
    x = base.grid.points()
    v = np.zeros(base.values.shape)
    for _ in range(n_bumps):
        center = rng.uniform(-width, width, size=2)
        amplitude = rng.normal(size=3)
        spread = width * rng.uniform(0.5, 1.5)
        weight = np.exp(-np.sum((x - center) ** 2, axis=-1) / (2.0 * spread**2))
        v += weight[..., None] * amplitude
    n = base.values
    tangent = v - np.sum(v * n, axis=-1, keepdims=True) * n
    return TangentField2D(base.grid, tangent, base)


@register_check
class ElResidualCheck(BaseCheck):
    NAME = "el-residual"
    DESCRIPTION = "Euler–Lagrange residual of the skyrmion converges under refinement"

    # Minimum coarse/fine ratio of the sup-norm residual when the spacing halves
    TOLERANCE = 3.0

    def passes(self, measured: float) -> bool:
        return measured >= self.TOLERANCE

    def measure(self, config: RunConfig) -> Tuple[float, str]:
        scale = config.scale or 2.0 * config.r
        grid = verify_grid(config, scale)
        coarse, fine, ratio = el_residual_study(lambda x: skyrmion_at_scale(x, scale), grid, config.r, config.fd_order)
        return ratio, f"scale={scale:g}, sup residual {coarse:.3e} -> {fine:.3e}"


@register_check
class FactorizationCheck(BaseCheck):
    NAME = "factorization"
    DESCRIPTION = "E4 - 4πr²Q equals the helical square plus (1 - r²)D"

    # Bound on |lhs - rhs|/(1 + |lhs|)
    TOLERANCE = 1e-3

    # Bound on the helical-derivative square of the skyrmion at scale 2r
    SQUARE_TOL = 1e-6

    def measure(self, config: RunConfig) -> Tuple[float, str]:
        scale = 2.0 * config.r
        grid = verify_grid(config, scale)
        base = sample_field(lambda x: skyrmion_at_scale(x, scale), grid)
        sides = factorization_sides(base, config.r, config.fd_order)
        worst = sides.relative_gap
        rng = np.random.default_rng(config.seed)
        for _ in range(N_PERTURBED):
            phi = random_tangent_field(base, rng, width=2.0 * scale)
            perturbed = perturb_field(base, phi, rng.uniform(0.1, 0.5))
            worst = max(worst, factorization_sides(perturbed, config.r, config.fd_order).relative_gap)
        detail = f"skyrmion gap {sides.relative_gap:.3e}, square sup {sides.square_sup:.3e}, {N_PERTURBED} perturbed fields"
        if sides.square_sup > self.SQUARE_TOL:
            # the square must vanish pointwise at the scaled skyrmion
            return float("inf"), detail
        return worst, detail


@register_check
class ProfileCheck(BaseCheck):
    NAME = "profile"
    DESCRIPTION = "Closed forms of θ and the harmonic-map profile equation"

    TOLERANCE = 1e-8

    def measure(self, config: RunConfig) -> Tuple[float, str]:
        grid = RadialGrid(1e-3, 1e3, 8001, "geometric")
        rho = np.asarray(grid.nodes)
        s, c = PROFILE.sin_theta(rho), PROFILE.cos_theta(rho)
        dt, d2t = PROFILE.dtheta(rho), PROFILE.d2theta(rho)

        errors = {
            "pythagoras": np.max(np.abs(s**2 + c**2 - 1.0)),
            "dtheta=-sin/rho": np.max(np.abs(dt + s / rho)),
            "profile equation": np.max(np.abs(d2t + dt / rho - s * c / rho**2)),
            "one_minus_cos": np.max(np.abs(PROFILE.one_minus_cos(rho) - (1.0 - c))),
        }
        theta = PROFILE.theta(rho)
        interior = slice(2, -2)
        errors["numeric dtheta"] = np.max(np.abs(central_diff(theta, grid, order=4)[interior] - dt[interior]))
        errors["numeric d2theta"] = np.max(np.abs(central_diff(dt, grid, order=4)[interior] - d2t[interior]))

        worst = max(errors, key=errors.get)
        return float(errors[worst]), f"largest error: {worst} ({errors[worst]:.3e})"
