"""
Checks on the radial side: the Fourier splitting of the frame Hessian,
the ground-state substitution identity and the Hardy ratio.
"""

import logging
from typing import Tuple

import numpy as np

from uzu.checks import register_check
from uzu.checks.base import BaseCheck
from uzu.core.hessian import mode_split_check, polar_field_from_modes, substitution_identity_check
from uzu.core.instability import hardy_ratio, make_hardy_function
from uzu.core.numerics import log_bump, random_log_bumps
from uzu.core.skyrmion import PROFILE
from uzu.models.fields import RadialFunction
from uzu.models.grids import PolarGrid, RadialGrid
from uzu.models.run_config import RunConfig
from uzu.utils.config import DEFAULT_HARDY_A_VALUES

logger = logging.getLogger(__name__)

# Number of random (A, V, ψ, g) tuples for the substitution identity
N_SUBSTITUTION = 50

# Hardy family must beat this ratio at its largest scale
HARDY_FAMILY_TARGET = 1.0 / 4.3


def substitution_grid() -> RadialGrid:
    return RadialGrid(0.05, 20.0, 4001, "geometric")


def random_substitution_tuple(grid: RadialGrid, rng: np.random.Generator):
    """Random smooth (A > 0, V, ψ > 0, g compactly supported)."""
    rho = np.asarray(grid.nodes)
    A = 1.0 + rng.uniform(0.1, 2.0) * rho / (1.0 + rho) + rng.uniform(0.0, 1.0) * rho**2 / (1.0 + rho**2)
    V = rng.normal() * np.cos(rng.uniform(0.5, 2.0) * np.log(rho)) + rng.normal() / (1.0 + rho**2)
    psi = np.exp(0.5 * np.tanh(random_log_bumps(grid, rng)))
    lo = np.exp(rng.uniform(np.log(0.2), np.log(0.6)))
    hi = np.exp(rng.uniform(np.log(3.0), np.log(8.0)))
    g = log_bump(grid, lo, hi) * (1.0 + 0.5 * np.sin(rng.uniform(1.0, 3.0) * np.log(rho)))
    return tuple(RadialFunction(grid, v) for v in (A, V, psi, g))


def kernel_substitution_tuple(grid: RadialGrid):
    """A = ρ, V = (1 + cosθ)²/ρ - ρθ′², ψ = sinθ/ρ, so Lψ = 0."""
    rho = np.asarray(grid.nodes)
    c, dt = PROFILE.cos_theta(rho), PROFILE.dtheta(rho)
    A = rho
    V = (1.0 + c) ** 2 / rho - rho * dt**2
    psi = PROFILE.sin_theta(rho) / rho
    g = log_bump(grid, 0.3, 6.0)
    return tuple(RadialFunction(grid, v) for v in (A, V, psi, g))


@register_check
class ModeSplittingCheck(BaseCheck):
    NAME = "mode-splitting"
    DESCRIPTION = "Frame Hessian equals the weighted sum of its Fourier mode forms"

    # Relative gap between the direct and the split evaluation
    TOLERANCE = 1e-8

    def measure(self, config: RunConfig) -> Tuple[float, str]:
        rng = np.random.default_rng(config.seed)
        grid = PolarGrid(RadialGrid(1e-2, 1e2, 801, "geometric"), 32)
        coefficients = {
            k: tuple(random_log_bumps(grid.radial, rng) for _ in range(4)) for k in range(4)
        }
        field = polar_field_from_modes(grid, coefficients)
        full, split = mode_split_check(field, config.r, config.fd_order)
        gap = abs(full - split) / max(1.0, abs(full))
        return gap, f"r={config.r:g}: direct {full:.10g}, split {split:.10g}"


@register_check
class SubstitutionCheck(BaseCheck):
    NAME = "substitution"
    DESCRIPTION = "∫(Lf)f = ∫ψ²A(g′)² + ∫(Lψ)ψg² for f = ψg, and L₁(sinθ/ρ) = 0"

    TOLERANCE = 1e-6

    # Bound on the kernel term for ψ = sinθ/ρ
    KERNEL_TOL = 1e-8

    def measure(self, config: RunConfig) -> Tuple[float, str]:
        grid = substitution_grid()
        rng = np.random.default_rng(config.seed)
        worst = 0.0
        for _ in range(N_SUBSTITUTION):
            sides = substitution_identity_check(*random_substitution_tuple(grid, rng), order=config.fd_order)
            worst = max(worst, abs(sides.lhs - sides.rhs) / max(1.0, abs(sides.lhs)))
        kernel = abs(substitution_identity_check(*kernel_substitution_tuple(grid), order=config.fd_order).kernel_term)
        detail = f"worst relative gap over {N_SUBSTITUTION} tuples {worst:.3e}, kernel term {kernel:.3e}"
        if kernel > self.KERNEL_TOL:
            return float("inf"), detail
        return worst, detail


@register_check
class HardyCheck(BaseCheck):
    NAME = "hardy"
    DESCRIPTION = "Hardy ratio stays below ¼ and the cutoff family approaches it"

    # Allowed excess of a measured ratio over ¼
    TOLERANCE = 1e-3

    def measure(self, config: RunConfig) -> Tuple[float, str]:
        ratios = [hardy_ratio(make_hardy_function(A).radial) for A in DEFAULT_HARDY_A_VALUES]
        grid = substitution_grid()
        ratios.append(hardy_ratio(RadialFunction(grid, log_bump(grid, 1.0, 2.0))))
        family = ratios[: len(DEFAULT_HARDY_A_VALUES)]
        detail = ", ".join(f"A={A:g}: {q:.6f}" for A, q in zip(DEFAULT_HARDY_A_VALUES, family))
        if any(b <= a for a, b in zip(family, family[1:])) or family[-1] < HARDY_FAMILY_TARGET:
            return float("inf"), detail + " (family does not approach 1/4)"
        return max(ratios) - 0.25, detail
