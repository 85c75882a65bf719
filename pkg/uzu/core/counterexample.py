"""
Unbounded-below energy for r > 1: the strip map n_L glues the Beltrami
strip b(x1) on |x2| <= L to two half-skyrmions at scale 1/r, so that
E[n_L] = 2L ∫ 2(1-r²)/(r²x1²+1)² dx1 + E[h^{1/r}] while the degree stays -1.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np
from scipy import integrate

from uzu.core.energy import E3, curl, total_energy
from uzu.core.skyrmion import beltrami_strip, beltrami_strip_derivative, sample_field, stitched_map
from uzu.models.grids import Grid2D
from uzu.models.reports import EnergyBreakdown, StripEnergyReport
from uzu.utils.config import DEFAULT_FD_ORDER, DEFAULT_STRIP_N_PER_SIDE, STRIP_CAP_FACTOR, STRIP_WIDTH_FACTOR
from uzu.utils.errors import InvalidInputError

logger = logging.getLogger(__name__)


def _check_coupling(r: float) -> None:
    if not np.isfinite(r) or r <= 0:
        raise InvalidInputError(f"coupling r must be positive, got {r}")


def strip_density(x1, r: float) -> np.ndarray:
    """2(1-r²)/(r²x1²+1)², the energy density of the Beltrami strip."""
    _check_coupling(r)
    x1 = np.asarray(x1, dtype=float)
    return 2.0 * (1.0 - r**2) / (r**2 * x1**2 + 1.0) ** 2


def strip_density_lhs(x1, r: float) -> np.ndarray:
    """½|∇b|² + r(b - e3)·curl b + ½(b3 - 1)² from the analytic derivatives of b."""
    x1 = np.asarray(x1, dtype=float)
    points = np.stack([x1, np.zeros_like(x1)], axis=-1)
    b = beltrami_strip(points, r)
    d1 = beltrami_strip_derivative(x1, r)
    d2 = np.zeros_like(d1)
    dirichlet = 0.5 * np.sum(d1**2, axis=-1)
    helical = r * np.sum((b - E3) * curl(d1, d2), axis=-1)
    return dirichlet + helical + 0.5 * (b[..., 2] - 1.0) ** 2


def analytic_slope(r: float) -> float:
    """dE[n_L]/dL = 2 ∫_ℝ strip_density dx1, by adaptive quadrature."""
    _check_coupling(r)
    value, error = integrate.quad(lambda x: float(strip_density(x, r)), -np.inf, np.inf, epsabs=1e-13, epsrel=1e-12)
    logger.debug(f"strip slope quadrature at r={r}: {2.0 * value:.12g} ± {2.0 * error:.2g}")
    return 2.0 * value


def closed_form_slope(r: float) -> float:
    """2π(1 - r²)/r."""
    _check_coupling(r)
    return 2.0 * np.pi * (1.0 - r**2) / r


def strip_integral(L: float, r: float, X: Optional[float] = None) -> float:
    """
    ∫ strip_density over |x2| <= L and |x1| <= X (all of ℝ when X is None),
    from the antiderivative of (1 + u²)⁻², ½(u/(1 + u²) + arctan u).
    """
    _check_coupling(r)
    if L < 0:
        raise InvalidInputError(f"strip half-width must be nonnegative, got {L}")
    if X is None:
        transverse = np.pi / 2.0
    else:
        u = r * X
        transverse = u / (1.0 + u**2) + np.arctan(u)
    return float(2.0 * L * 2.0 * (1.0 - r**2) / r * transverse)


def stitched_grid(r: float, L_max: float, n_per_side: int = DEFAULT_STRIP_N_PER_SIDE) -> Grid2D:
    """Square reaching STRIP_WIDTH_FACTOR/r across the strip and STRIP_CAP_FACTOR/r past each cap."""
    _check_coupling(r)
    half_width = max(STRIP_WIDTH_FACTOR / r, L_max + STRIP_CAP_FACTOR / r)
    return Grid2D(half_width, n_per_side)


def stitched_energy_sweep(
    r: float,
    L_values: Sequence[float],
    grid: Optional[Grid2D] = None,
    p: float = 4.0,
    order: int = DEFAULT_FD_ORDER,
) -> StripEnergyReport:
    """
    Energy of n_L for each L with a least-squares line E = slope·L + intercept.

    Args:
        r: Coupling
        L_values: Strictly increasing strip half-widths
        grid: Cartesian grid; defaults to stitched_grid(r, max(L_values))
        p: Potential exponent
        order: Finite-difference order

    Returns:
        StripEnergyReport with the fit, its relative residual and the analytic slope
    """
    _check_coupling(r)
    L_values = [float(L) for L in L_values]
    if not L_values:
        raise InvalidInputError("at least one strip half-width is required")
    if any(L < 0 for L in L_values):
        raise InvalidInputError("strip half-widths must be nonnegative")
    if np.any(np.diff(L_values) <= 0):
        raise InvalidInputError(f"strip half-widths must be strictly increasing, got {L_values}")
    L_max = max(L_values)
    grid = grid or stitched_grid(r, L_max)
    if grid.half_width < L_max + STRIP_CAP_FACTOR / r:
        raise InvalidInputError(
            f"grid half-width {grid.half_width:g} leaves no room for the caps at L={L_max:g}"
            f" (need {L_max + STRIP_CAP_FACTOR / r:g})"
        )

    energies: List[EnergyBreakdown] = []
    for L in L_values:
        field = sample_field(lambda x: stitched_map(x, r, L), grid)
        energies.append(total_energy(field, r, p, order))
        logger.info(f"r={r}, L={L:g}: E={energies[-1].total:.8g}, Q={energies[-1].degree:.6f}")

    totals = np.array([e.total for e in energies])
    if len(L_values) >= 2:
        slope, intercept = np.polyfit(L_values, totals, 1)
        fit = slope * np.asarray(L_values) + intercept
        residual = float(np.linalg.norm(totals - fit) / max(np.linalg.norm(totals), 1e-300))
    else:
        slope, intercept, residual = float("nan"), float(totals[0]), 0.0
    quadratic = float(np.polyfit(L_values, totals, 2)[0]) if len(L_values) >= 3 else None

    return StripEnergyReport(
        r=r,
        L_values=L_values,
        energies=energies,
        slope=float(slope),
        intercept=float(intercept),
        residual=residual,
        analytic_slope=analytic_slope(r),
        quadratic_coefficient=quadratic,
    )
