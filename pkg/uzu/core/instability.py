"""
Negative directions of the mode forms.

With α = β = (sinθ/ρ)ξ the mode-k form becomes
∫ [2 sin²θ/ρ (ξ′)² + f_k^r(ρ) ξ²] dρ. Dilating ξ_λ(ρ) = ξ(λρ)/λ² and
letting λ → 0 leaves the limit form
∫ [8/ρ³ (ξ′)² - 8(k-1)(8r²-k-3)/ρ⁵ ξ²] dρ, whose sign is decided by the
Hardy inequality ∫ξ²/ρ⁵ ≤ ¼ ∫(ξ′)²/ρ³.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from uzu.core.hessian import ModeForm, min_mode_eigenvalue, tangent_field_from_frame
from uzu.core.numerics import central_diff, radial_integral
from uzu.core.skyrmion import PROFILE
from uzu.models.fields import MagnetizationField, RadialFunction, TangentField2D
from uzu.models.grids import Grid2D, RadialGrid
from uzu.models.reports import ThresholdEstimate, UnstableDirection, WitnessSearch
from uzu.utils.config import (
    DEFAULT_A_VALUES,
    DEFAULT_FD_ORDER,
    DEFAULT_LAMBDA_VALUES,
    DEFAULT_MASS,
    DEFAULT_N_PER_SIDE,
    DEFAULT_R_HI,
    DEFAULT_R_LO,
    DEFAULT_R_TOL,
    DEFAULT_WIDTH_FACTOR,
    HARDY_NODES_PER_EFOLD,
)
from uzu.utils.errors import InvalidInputError, NoSignChangeError

logger = logging.getLogger(__name__)

# Width of the rounded corners of a Hardy ramp, in the ramp's normalized log variable
HARDY_CORNER = 1.0 / 256.0

# Bisection gives up after this many halvings
MAX_BISECTION_STEPS = 200


def f_k_r(rho, k: int, r: float) -> np.ndarray:
    """
    f_k^r(ρ) = 2(k²-1) sin²θ/ρ³ + 4(k-1) sin²θ cosθ/ρ³ + 8(1-k) r² sin³θ/ρ².
    Decays like -8(k-1)(8r²-k-3) ρ⁻⁵.
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise InvalidInputError("f_k^r is defined for rho > 0 only")
    s, c = PROFILE.sin_theta(rho), PROFILE.cos_theta(rho)
    return (
        2.0 * (k**2 - 1) * s**2 / rho**3
        + 4.0 * (k - 1) * s**2 * c / rho**3
        + 8.0 * (1 - k) * r**2 * s**3 / rho**2
    )


def limit_coefficient(k: int, r: float) -> float:
    """(k-1)(8r²-k-3), the weight of -8∫ξ²/ρ⁵ in the limit form."""
    return float((k - 1) * (8.0 * r**2 - k - 3))


def transformed_mode_form(k: int, r: float, xi: RadialFunction, order: int = DEFAULT_FD_ORDER) -> float:
    """H_k^r[(sinθ/ρ)ξ, (sinθ/ρ)ξ] as ∫ [2 sin²θ/ρ (ξ′)² + f_k^r ξ²] dρ."""
    rho = np.asarray(xi.nodes)
    dxi = central_diff(xi.values, xi.grid, order=order)
    integrand = 2.0 * PROFILE.sin_theta(rho) ** 2 / rho * dxi**2 + f_k_r(rho, k, r) * xi.values**2
    return float(radial_integral(integrand, xi.grid))


def limit_form(k: int, r: float, xi: RadialFunction, order: int = DEFAULT_FD_ORDER) -> float:
    """I_k^r[ξ] = ∫ [8/ρ³ (ξ′)² - 8(k-1)(8r²-k-3)/ρ⁵ ξ²] dρ."""
    dxi = central_diff(xi.values, xi.grid, order=order)
    gradient = radial_integral(dxi**2, xi.grid, weight=-3.0)
    mass = radial_integral(xi.values**2, xi.grid, weight=-5.0)
    return float(8.0 * gradient - 8.0 * limit_coefficient(k, r) * mass)


def rescale_xi(xi: RadialFunction, lam: float, grid: Optional[RadialGrid] = None) -> RadialFunction:
    """
    ξ_λ(ρ) = ξ(λρ)/λ².

    Without a target grid the result lives on the dilated grid (nodes ρ_i/λ),
    where it is exact. With a target grid it is interpolated by cubic spline
    and must fit inside that grid.
    """
    if not np.isfinite(lam) or lam <= 0:
        raise InvalidInputError(f"rescale parameter must be positive, got {lam}")
    if grid is None:
        return RadialFunction(xi.grid.scaled(1.0 / lam), np.asarray(xi.values) / lam**2)

    support = xi.support()
    if support is not None:
        lo, hi = support[0] / lam, support[1] / lam
        if lo < grid.rho_min or hi > grid.rho_max:
            raise InvalidInputError(
                f"rescaled support [{lo:.4g}, {hi:.4g}] does not fit the grid [{grid.rho_min:.4g}, {grid.rho_max:.4g}]"
            )
    source = np.asarray(xi.nodes)
    target = lam * np.asarray(grid.nodes)
    inside = (target >= source[0]) & (target <= source[-1])
    values = np.zeros(grid.n)
    values[inside] = CubicSpline(source, xi.values)(target[inside])
    return RadialFunction(grid, values / lam**2)


def hardy_ratio(xi: RadialFunction, order: int = DEFAULT_FD_ORDER) -> float:
    """(∫ξ²/ρ⁵ dρ) / (∫(ξ′)²/ρ³ dρ); at most ¼ for every admissible ξ."""
    dxi = central_diff(xi.values, xi.grid, order=order)
    denominator = radial_integral(dxi**2, xi.grid, weight=-3.0)
    if denominator <= 0:
        raise InvalidInputError("Hardy ratio needs a non-constant xi")
    return float(radial_integral(xi.values**2, xi.grid, weight=-5.0) / denominator)


def hardy_slack(xi: RadialFunction, order: int = DEFAULT_FD_ORDER) -> float:
    """ε with ∫(ξ′)²/ρ³ = (4 + ε)∫ξ²/ρ⁵."""
    return 1.0 / hardy_ratio(xi, order) - 4.0


# Hardy cutoff functions


def _smoothstep(t: np.ndarray) -> np.ndarray:
    t = np.clip(t, 0.0, 1.0)
    return t**3 * (10.0 - 15.0 * t + 6.0 * t**2)


def _smoothstep_integral(t: np.ndarray) -> np.ndarray:
    """∫₀ᵗ smoothstep."""
    t = np.clip(t, 0.0, 1.0)
    return t**4 * (2.5 - 3.0 * t + t**2)


def _ramp(s: np.ndarray) -> np.ndarray:
    """C² ramp from 0 at s <= 0 to 1 at s >= 1, linear away from its ends."""
    d = HARDY_CORNER
    s = np.clip(s, 0.0, 1.0)
    lower = d * _smoothstep_integral(s / d)
    upper = (1.0 - d) - d * _smoothstep_integral((1.0 - s) / d)
    middle = 0.5 * d + (s - d)
    return np.where(s < d, lower, np.where(s > 1.0 - d, upper, middle)) / (1.0 - d)


def _ramp_slope(s: np.ndarray) -> np.ndarray:
    d = HARDY_CORNER
    shoulders = np.minimum(_smoothstep(s / d), _smoothstep((1.0 - s) / d))
    return shoulders / (1.0 - d)


def hardy_chi(rho, A: float) -> np.ndarray:
    """χ_A: ramps linear in ln ρ over [½, 1] and [A, 2A] with rounded corners."""
    rho = np.maximum(np.asarray(rho, dtype=float), 1e-300)
    log2 = np.log(2.0)
    return np.minimum(_ramp(np.log(2.0 * rho) / log2), _ramp(1.0 - np.log(rho / A) / log2))


def hardy_dchi(rho, A: float) -> np.ndarray:
    """dχ_A/dρ."""
    rho = np.maximum(np.asarray(rho, dtype=float), 1e-300)
    log2 = np.log(2.0)
    rise = (rho > 0.5) & (rho < 1.0)
    fall = (rho > A) & (rho < 2.0 * A)
    up = _ramp_slope(np.log(2.0 * rho) / log2) / (log2 * rho)
    down = -_ramp_slope(1.0 - np.log(rho / A) / log2) / (log2 * rho)
    return np.where(rise, up, np.where(fall, down, 0.0))


@dataclass(frozen=True, eq=False)
class HardyFunction:
    """
    ξ_A = ρ² χ_A with χ_A = 1 on [1, A] and 0 outside [½, 2A].
    On [A, 2A], |χ′| ≤ 1/((1 - HARDY_CORNER) A ln 2) < 1.45/A.
    """

    A: float
    radial: RadialFunction

    def chi(self, rho) -> np.ndarray:
        return hardy_chi(rho, self.A)

    def dchi(self, rho) -> np.ndarray:
        return hardy_dchi(rho, self.A)

    def xi(self, rho) -> np.ndarray:
        rho = np.asarray(rho, dtype=float)
        return rho**2 * hardy_chi(rho, self.A)

    def audit(self) -> Dict[str, float]:
        """Measured constraints on the sampled grid."""
        rho = np.asarray(self.radial.nodes)
        chi = self.chi(rho)
        top = (rho >= self.A) & (rho <= 2.0 * self.A)
        plateau = (rho >= 1.0) & (rho <= self.A)
        outside = (rho < 0.5) | (rho > 2.0 * self.A)
        return {
            "chi_min": float(chi.min()),
            "chi_max": float(chi.max()),
            "plateau_gap": float(np.max(np.abs(chi[plateau] - 1.0))) if plateau.any() else 0.0,
            "outside_max": float(np.max(np.abs(chi[outside]))) if outside.any() else 0.0,
            "max_dchi_times_A": float(np.max(np.abs(self.dchi(rho[top]))) * self.A) if top.any() else 0.0,
        }


def _check_hardy_scale(A: float) -> None:
    if not np.isfinite(A) or A <= 1:
        raise InvalidInputError(f"Hardy scale A must exceed 1, got {A}")


def hardy_grid(A: float, nodes_per_efold: int = HARDY_NODES_PER_EFOLD) -> RadialGrid:
    """Geometric grid on [¼, 4A]."""
    _check_hardy_scale(A)
    n = int(np.ceil(np.log(16.0 * A) * nodes_per_efold)) + 1
    return RadialGrid(0.25, 4.0 * A, n, "geometric")


def make_hardy_function(A: float, grid: Optional[RadialGrid] = None) -> HardyFunction:
    """Sample ξ_A on a grid covering [¼, 4A]."""
    _check_hardy_scale(A)
    grid = grid or hardy_grid(A)
    if not grid.covers(0.25, 4.0 * A):
        raise InvalidInputError(
            f"grid [{grid.rho_min:.4g}, {grid.rho_max:.4g}] must cover [0.25, {4.0 * A:.4g}]"
        )
    rho = np.asarray(grid.nodes)
    return HardyFunction(A, RadialFunction(grid, rho**2 * hardy_chi(rho, A)))


# Searches


def _sweep_point(k: int, r: float, A: float, lam: float, grid: RadialGrid, order: int) -> Tuple[float, RadialFunction]:
    xi = rescale_xi(make_hardy_function(A, grid).radial, lam)
    return transformed_mode_form(k, r, xi, order), xi


def find_negative_direction(
    k: int,
    r: float,
    a_values: Sequence[float] = DEFAULT_A_VALUES,
    lambda_values: Sequence[float] = DEFAULT_LAMBDA_VALUES,
    order: int = DEFAULT_FD_ORDER,
) -> WitnessSearch:
    """
    Sweep dilated Hardy functions ξ_{A,λ} for a negative value of the transformed
    mode-k form. A candidate counts only if it stays negative on a grid with the
    spacing halved; the most negative certified candidate wins, earlier sweep
    points win ties.
    """
    if int(k) != k or k < 2:
        raise InvalidInputError(f"negative directions exist only for modes k >= 2, got {k}")
    if not np.isfinite(r) or r <= 0:
        raise InvalidInputError(f"coupling r must be positive, got {r}")

    best: Optional[Tuple[float, float, float]] = None
    witness: Optional[UnstableDirection] = None
    for A in a_values:
        grid = hardy_grid(A)
        for lam in lambda_values:
            value, xi = _sweep_point(k, r, A, lam, grid, order)
            logger.debug(f"k={k}, r={r}, A={A:g}, lambda={lam:g}: form value {value:.6e}")
            if best is None or value < best[0]:
                best = (value, A, lam)
            if value >= 0 or (witness is not None and value >= witness.form_value):
                continue
            certified, _ = _sweep_point(k, r, A, lam, grid.refined(), order)
            if certified >= 0:
                logger.warning(f"A={A:g}, lambda={lam:g}: negative value {value:.3e} did not survive refinement")
                continue
            witness = UnstableDirection(
                k=k,
                r=r,
                A=A,
                lam=lam,
                xi=xi,
                form_value=value,
                certified_value=certified,
                notes=[f"Hardy cutoff A={A:g}", f"dilation lambda={lam:g}", f"refined grid n={grid.refined().n}"],
            )

    if best is None:
        raise InvalidInputError("the A and lambda sweeps must not be empty")
    if witness is not None:
        logger.info(f"mode {k}, r={r}: negative direction at A={witness.A:g}, lambda={witness.lam:g}")
    else:
        logger.info(f"mode {k}, r={r}: no negative direction, best value {best[0]:.6e}")
    return WitnessSearch(k=k, r=r, witness=witness, best_value=best[0], best_A=best[1], best_lam=best[2])


def threshold_scan(
    k: int,
    r_lo: float = DEFAULT_R_LO,
    r_hi: float = DEFAULT_R_HI,
    tol: float = DEFAULT_R_TOL,
    grid: Optional[RadialGrid] = None,
    symmetric: bool = True,
    mass: str = DEFAULT_MASS,
) -> ThresholdEstimate:
    """Bisect on the sign of the lowest mode-k eigenvalue."""
    if not (0 <= r_lo < r_hi):
        raise InvalidInputError(f"need 0 <= r_lo < r_hi, got [{r_lo}, {r_hi}]")
    if tol <= 0:
        raise InvalidInputError(f"tolerance must be positive, got {tol}")

    def eig(r: float) -> float:
        return min_mode_eigenvalue(ModeForm(k, r), grid, symmetric, mass)

    eig_lo, eig_hi = eig(r_lo), eig(r_hi)
    if (eig_lo < 0) == (eig_hi < 0):
        raise NoSignChangeError(
            f"no sign change of the mode-{k} eigenvalue on [{r_lo}, {r_hi}] ({eig_lo:.3e}, {eig_hi:.3e})"
        )

    steps = 0
    while r_hi - r_lo > tol and steps < MAX_BISECTION_STEPS:
        mid = 0.5 * (r_lo + r_hi)
        eig_mid = eig(mid)
        if (eig_mid < 0) == (eig_lo < 0):
            r_lo, eig_lo = mid, eig_mid
        else:
            r_hi, eig_hi = mid, eig_mid
        steps += 1

    estimate = ThresholdEstimate(
        k=k,
        r_c=0.5 * (r_lo + r_hi),
        r_lo=r_lo,
        r_hi=r_hi,
        eig_lo=eig_lo,
        eig_hi=eig_hi,
        symmetric=symmetric,
        steps=steps,
    )
    logger.info(f"mode {k}: r_c ≈ {estimate.r_c:.6f} after {steps} steps")
    return estimate


def threshold_table(
    k_values: Iterable[int],
    r_lo: float = DEFAULT_R_LO,
    r_hi: float = DEFAULT_R_HI,
    tol: float = DEFAULT_R_TOL,
    grid: Optional[RadialGrid] = None,
    symmetric: bool = True,
    mass: str = DEFAULT_MASS,
) -> List[Tuple[int, Optional[ThresholdEstimate]]]:
    """threshold_scan per mode; modes without a sign change map to None."""
    rows = []
    for k in k_values:
        try:
            rows.append((k, threshold_scan(k, r_lo, r_hi, tol, grid, symmetric, mass)))
        except NoSignChangeError as e:
            logger.info(str(e))
            rows.append((k, None))
    return rows


def alpha_from_xi(xi: RadialFunction) -> RadialFunction:
    """α = (sinθ/ρ) ξ."""
    rho = np.asarray(xi.nodes)
    return xi.with_values(PROFILE.sin_theta(rho) / rho * xi.values)


def assemble_unstable_field(
    xi: RadialFunction,
    k: int = 3,
    grid: Optional[Grid2D] = None,
    scale: float = 1.0,
    base: Optional[MagnetizationField] = None,
) -> TangentField2D:
    """
    φ = u1 J1 + u2 J2 with u1 = α cos kψ, u2 = α sin kψ and α = (sinθ/ρ)ξ.
    The field realizes π H_k^r[α, α]; α is interpolated by cubic spline and
    vanishes outside the grid of ξ.
    """
    grid = grid or Grid2D(DEFAULT_WIDTH_FACTOR * scale, DEFAULT_N_PER_SIDE)
    alpha = alpha_from_xi(xi)
    nodes = np.asarray(xi.nodes)
    spline = CubicSpline(nodes, alpha.values)

    def profile(rho, psi):
        inside = (rho >= nodes[0]) & (rho <= nodes[-1])
        a = np.where(inside, spline(np.clip(rho, nodes[0], nodes[-1])), 0.0)
        return a * np.cos(k * psi), a * np.sin(k * psi)

    return tangent_field_from_frame(grid, profile, scale, base)
