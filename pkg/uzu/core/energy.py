"""
The Landau–Lifshitz energy with Dzyaloshinskii–Moriya interaction on a
Cartesian grid: E_p[n] = D[n] + r H[n] + V_p[n], the topological degree,
the Euler–Lagrange residual, the Bogomol'nyi-type factorization and the
second variation around a critical point.
"""

import logging
from typing import Tuple

import numpy as np

from uzu.core.numerics import central_diff, integrate_grid2d, second_diff, tail_estimate
from uzu.core.skyrmion import sample_field
from uzu.models.fields import MagnetizationField, TangentField2D
from uzu.models.grids import Grid2D
from uzu.models.reports import EnergyBreakdown, FactorizationSides, ResidualReport
from uzu.utils.config import DEFAULT_FD_ORDER
from uzu.utils.errors import InvalidInputError

logger = logging.getLogger(__name__)

E3 = np.array([0.0, 0.0, 1.0])


def gradients(values: np.ndarray, grid: Grid2D, order: int = DEFAULT_FD_ORDER) -> Tuple[np.ndarray, np.ndarray]:
    """(∂1 n, ∂2 n) for node values of shape (n, n, 3)."""
    return central_diff(values, grid, axis=0, order=order), central_diff(values, grid, axis=1, order=order)


def curl(d1: np.ndarray, d2: np.ndarray) -> np.ndarray:
    """(∂1, ∂2, 0) × n from the partial derivatives."""
    return np.stack([d2[..., 2], -d1[..., 2], d1[..., 1] - d2[..., 0]], axis=-1)


def _dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.sum(a * b, axis=-1)


def _dirichlet_density(d1, d2) -> np.ndarray:
    return 0.5 * (_dot(d1, d1) + _dot(d2, d2))


def _helicity_density(values, d1, d2) -> np.ndarray:
    return _dot(values - E3, curl(d1, d2))


def _potential_density(values, p: float) -> np.ndarray:
    dist_sq = values[..., 0] ** 2 + values[..., 1] ** 2 + (values[..., 2] - 1.0) ** 2
    return 2.0 ** (1.0 - p) * dist_sq ** (p / 2.0)


def _degree_density(values, d1, d2) -> np.ndarray:
    return _dot(values, np.cross(d1, d2)) / (4.0 * np.pi)


def _check_p(p: float) -> None:
    if not np.isfinite(p) or p < 2:
        raise InvalidInputError(f"potential exponent p must be >= 2, got {p}")


def dirichlet(field: MagnetizationField, order: int = DEFAULT_FD_ORDER) -> float:
    """D[n] = ½∫|∇n|²."""
    d1, d2 = gradients(field.values, field.grid, order)
    return integrate_grid2d(_dirichlet_density(d1, d2), field.grid)


def helicity(field: MagnetizationField, order: int = DEFAULT_FD_ORDER) -> float:
    """H[n] = ∫(n - e3)·curl n."""
    d1, d2 = gradients(field.values, field.grid, order)
    return integrate_grid2d(_helicity_density(field.values, d1, d2), field.grid)


def potential(field: MagnetizationField, p: float = 4.0) -> float:
    """V_p[n] = 2^{1-p}∫|n - e3|^p; for p = 4 this is ½∫(1 - n3)²."""
    _check_p(p)
    return integrate_grid2d(_potential_density(field.values, p), field.grid)


def degree(field: MagnetizationField, order: int = DEFAULT_FD_ORDER) -> float:
    """Q[n] = (1/4π)∫ n·∂1n × ∂2n."""
    d1, d2 = gradients(field.values, field.grid, order)
    return integrate_grid2d(_degree_density(field.values, d1, d2), field.grid)


def total_energy(field: MagnetizationField, r: float, p: float = 4.0, order: int = DEFAULT_FD_ORDER) -> EnergyBreakdown:
    """
    Assemble the energy breakdown of a field.

    Args:
        field: Sampled magnetization
        r: Dzyaloshinskii–Moriya coupling, r > 0
        p: Potential exponent, p >= 2
        order: Finite-difference order (2 or 4)

    Returns:
        EnergyBreakdown with the |x|⁻⁴ tail of the total density as tail_estimate
    """
    if not np.isfinite(r) or r <= 0:
        raise InvalidInputError(f"coupling r must be positive, got {r}")
    _check_p(p)
    grid = field.grid
    d1, d2 = gradients(field.values, grid, order)
    dens_d = _dirichlet_density(d1, d2)
    dens_h = _helicity_density(field.values, d1, d2)
    dens_v = _potential_density(field.values, p)

    breakdown = EnergyBreakdown.assemble(
        dirichlet=integrate_grid2d(dens_d, grid),
        helicity=integrate_grid2d(dens_h, grid),
        potential=integrate_grid2d(dens_v, grid),
        r=r,
        p=p,
        degree=integrate_grid2d(_degree_density(field.values, d1, d2), grid),
        grid_x=grid.half_width,
        grid_n=grid.n_per_side,
        tail_estimate=tail_estimate(dens_d + r * dens_h + dens_v, grid),
    )
    logger.debug(f"total_energy r={r} p={p}: total={breakdown.total:.8g}, Q={breakdown.degree:.6f}")
    return breakdown


def lagrange_multiplier(values: np.ndarray, d1: np.ndarray, d2: np.ndarray, coupling: float, anisotropy: float = 1.0) -> np.ndarray:
    """
    Λ = |∇n|² + 2c n·curl n - a(1 - n3)n3 per node.

    With c = r and a = 1 this is the multiplier of the Euler–Lagrange
    equation; the rescaled Hessian uses c = 2r², a = 4r².
    """
    return (
        _dot(d1, d1)
        + _dot(d2, d2)
        + 2.0 * coupling * _dot(values, curl(d1, d2))
        - anisotropy * (1.0 - values[..., 2]) * values[..., 2]
    )


def el_residual(field: MagnetizationField, r: float, order: int = DEFAULT_FD_ORDER) -> ResidualReport:
    """
    Residual of -Δn + 2r curl n - (1 - n3)e3 - Λ(n)n on interior nodes.

    Nodes within order/2 of the boundary are dropped, so every kept node
    uses the full central stencil.
    """
    if not np.isfinite(r) or r <= 0:
        raise InvalidInputError(f"coupling r must be positive, got {r}")
    grid, n = field.grid, field.values
    d1, d2 = gradients(n, grid, order)
    laplacian = second_diff(n, grid, axis=0, order=order) + second_diff(n, grid, axis=1, order=order)
    lam = lagrange_multiplier(n, d1, d2, r)
    residual = -laplacian + 2.0 * r * curl(d1, d2) - (1.0 - n[..., 2])[..., None] * E3 - lam[..., None] * n

    m = order // 2
    interior = residual[m:-m, m:-m]
    pointwise = np.linalg.norm(interior, axis=-1)
    h = grid.spacing
    return ResidualReport(
        residual=interior,
        sup_norm=float(np.max(pointwise)),
        l2_norm=float(np.sqrt(np.sum(pointwise**2) * h**2)),
        spacing=h,
    )


def el_residual_study(point_map, grid: Grid2D, r: float, order: int = DEFAULT_FD_ORDER) -> Tuple[float, float, float]:
    """
    Sup-norm residual on a grid and on its refinement.

    Returns:
        (coarse sup-norm, fine sup-norm, coarse/fine ratio)
    """
    coarse = el_residual(sample_field(point_map, grid), r, order).sup_norm
    fine = el_residual(sample_field(point_map, grid.refined()), r, order).sup_norm
    ratio = coarse / fine if fine > 0 else float("inf")
    logger.info(f"Euler–Lagrange residual: {coarse:.3e} -> {fine:.3e} (ratio {ratio:.2f})")
    return coarse, fine, ratio


def factorization_sides(field: MagnetizationField, r: float, order: int = DEFAULT_FD_ORDER) -> FactorizationSides:
    """
    Evaluate E4[n] - 4πr²Q[n] and (r²/2)∫|D1 n + n × D2 n|² + (1 - r²)D[n]
    along independent quadrature paths, with D_j = ∂_j - (1/r) e_j × ·.
    """
    breakdown = total_energy(field, r, 4.0, order)
    lhs = breakdown.total - 4.0 * np.pi * r**2 * breakdown.degree

    n = field.values
    d1, d2 = gradients(n, field.grid, order)
    e1 = np.array([1.0, 0.0, 0.0])
    e2 = np.array([0.0, 1.0, 0.0])
    helical_1 = d1 - np.cross(e1, n) / r
    helical_2 = d2 - np.cross(e2, n) / r
    square = _dot(helical_1 + np.cross(n, helical_2), helical_1 + np.cross(n, helical_2))
    rhs = 0.5 * r**2 * integrate_grid2d(square, field.grid) + (1.0 - r**2) * breakdown.dirichlet
    return FactorizationSides(lhs=float(lhs), rhs=float(rhs), square_sup=float(np.max(square)))


def perturb_field(base: MagnetizationField, phi: TangentField2D, t: float) -> MagnetizationField:
    """n_t = (n + tφ)/|n + tφ| for φ pointwise tangent to n."""
    if phi.grid != base.grid:
        raise InvalidInputError("perturbation and base field live on different grids")
    if phi.base is not base and phi.max_dot(base) > 1e-10:
        raise InvalidInputError("perturbation is not tangent to the base field")
    moved = base.values + t * phi.values
    return MagnetizationField(base.grid, moved / np.linalg.norm(moved, axis=-1, keepdims=True))


def hessian_quadratic_form(
    xi: TangentField2D,
    base: MagnetizationField,
    coupling: float,
    anisotropy: float = 1.0,
    order: int = DEFAULT_FD_ORDER,
) -> float:
    """
    Weak form ∫|∇ξ|² + 2c∫(curl ξ)·ξ + a∫ξ3² - ∫Λ|ξ|², with Λ the
    multiplier of the base field for the same (c, a).
    """
    if xi.grid != base.grid:
        raise InvalidInputError("perturbation and base field live on different grids")
    grid = base.grid
    x1, x2 = gradients(xi.values, grid, order)
    b1, b2 = gradients(base.values, grid, order)
    lam = lagrange_multiplier(base.values, b1, b2, coupling, anisotropy)
    density = (
        _dot(x1, x1)
        + _dot(x2, x2)
        + 2.0 * coupling * _dot(curl(x1, x2), xi.values)
        + anisotropy * xi.values[..., 2] ** 2
        - lam * _dot(xi.values, xi.values)
    )
    return integrate_grid2d(density, grid)


def hessian_form_2d(xi: TangentField2D, r: float, base: MagnetizationField, order: int = DEFAULT_FD_ORDER) -> float:
    """⟨Lξ, ξ⟩ for L = -Δ + 2r curl + ξ3 e3 - Λ(base), so E4[base + ξ] - E4[base] = ½⟨Lξ, ξ⟩."""
    return hessian_quadratic_form(xi, base, r, 1.0, order)
