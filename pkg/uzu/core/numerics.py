"""
Quadrature, finite differences and the generalized eigensolver.

Radial integrals are taken in the grid's natural coordinate: ρ for uniform
grids and ln ρ for geometric ones, where the trapezoid rule is applied to
f(ρ) ρ^{w+1}. Finite differences follow the same convention.
"""

import logging
from typing import Tuple, Union

import numpy as np
from scipy import integrate, linalg

from uzu.models.fields import RadialFunction
from uzu.models.grids import Grid2D, RadialGrid
from uzu.utils.config import EIG_RELATIVE_TOL, EIG_RESIDUAL_TOL, INVERSE_ITERATION_STEPS
from uzu.utils.errors import InvalidInputError, NumericFailureError

logger = logging.getLogger(__name__)

AnyGrid = Union[Grid2D, RadialGrid]


def _check_finite(values: np.ndarray, what: str) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise InvalidInputError(f"{what} contains non-finite values")
    return values


def radial_integral(values, grid: RadialGrid, weight: float = 0.0) -> float:
    """
    Trapezoidal approximation of ∫ f(ρ) ρ^weight dρ over the grid interval.

    Args:
        values: Samples of f at the grid nodes (the radial axis must be axis 0)
        grid: Radial grid the samples live on
        weight: Power of ρ multiplying f

    Returns:
        The integral (an array if values carries trailing axes)
    """
    values = _check_finite(values, "radial integrand")
    if values.shape[0] != grid.n:
        raise InvalidInputError(f"expected {grid.n} samples along the radial axis, got {values.shape[0]}")
    rho = np.asarray(grid.nodes).reshape((-1,) + (1,) * (values.ndim - 1))
    if grid.is_geometric:
        integrand = values * rho ** (weight + 1.0)
    else:
        integrand = values * rho**weight
    return integrate.trapezoid(integrand, x=grid.natural_coords, axis=0)


def integrate_radial(f: RadialFunction, weight: float = 0.0) -> float:
    """Integrate a radial function against ρ^weight."""
    return float(radial_integral(f.values, f.grid, weight))


def integrate_grid2d(values, grid: Grid2D) -> float:
    """Trapezoidal product rule over [-X, X]² for samples of shape (n, n)."""
    values = _check_finite(values, "grid integrand")
    n = grid.n_per_side
    if values.shape[:2] != (n, n):
        raise InvalidInputError(f"expected samples of shape ({n}, {n}), got {values.shape}")
    h = grid.spacing
    return float(integrate.trapezoid(integrate.trapezoid(values, dx=h, axis=0), dx=h, axis=0))


def _uniform_diff(values: np.ndarray, h: float, axis: int, order: int) -> np.ndarray:
    v = np.moveaxis(values, axis, 0)
    n = v.shape[0]
    if n < (3 if order == 2 else 5):
        raise InvalidInputError(f"order-{order} differences need more than {n} nodes")
    d = np.gradient(v, h, axis=0, edge_order=2)
    if order == 4:
        d[2:-2] = (v[:-4] - 8.0 * v[1:-3] + 8.0 * v[3:-1] - v[4:]) / (12.0 * h)
    return np.moveaxis(d, 0, axis)


def _uniform_second(values: np.ndarray, h: float, axis: int, order: int) -> np.ndarray:
    v = np.moveaxis(values, axis, 0)
    n = v.shape[0]
    if n < (4 if order == 2 else 5):
        raise InvalidInputError(f"order-{order} second differences need more than {n} nodes")
    d = np.empty_like(v)
    d[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / h**2
    d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h**2
    d[-1] = (2.0 * v[-1] - 5.0 * v[-2] + 4.0 * v[-3] - v[-4]) / h**2
    if order == 4:
        d[2:-2] = (-v[:-4] + 16.0 * v[1:-3] - 30.0 * v[2:-2] + 16.0 * v[3:-1] - v[4:]) / (12.0 * h**2)
    return np.moveaxis(d, 0, axis)


def _check_order(order: int) -> None:
    if order not in (2, 4):
        raise InvalidInputError(f"difference order must be 2 or 4, got {order}")


def _radial_factor(grid: RadialGrid, values: np.ndarray, axis: int, power: float) -> np.ndarray:
    shape = [1] * values.ndim
    shape[axis] = grid.n
    return np.asarray(grid.nodes).reshape(shape) ** power


def central_diff(values, grid: AnyGrid, axis: int = 0, order: int = 2) -> np.ndarray:
    """
    Derivative samples along one axis.

    Central differences in the interior (3-point for order 2, 5-point for
    order 4) and one-sided second-order formulas at the boundary nodes.
    On a geometric radial grid the derivative is taken in ln ρ and divided by ρ.
    """
    _check_order(order)
    values = np.asarray(values, dtype=float)
    if isinstance(grid, Grid2D):
        return _uniform_diff(values, grid.spacing, axis, order)
    if values.shape[axis] != grid.n:
        raise InvalidInputError(f"expected {grid.n} samples along axis {axis}, got {values.shape[axis]}")
    d = _uniform_diff(values, grid.natural_spacing, axis, order)
    if grid.is_geometric:
        d = d * _radial_factor(grid, values, axis, -1.0)
    return d


def second_diff(values, grid: AnyGrid, axis: int = 0, order: int = 2) -> np.ndarray:
    """Second derivative samples along one axis, same stencil conventions as central_diff."""
    _check_order(order)
    values = np.asarray(values, dtype=float)
    if isinstance(grid, Grid2D):
        return _uniform_second(values, grid.spacing, axis, order)
    d2 = _uniform_second(values, grid.natural_spacing, axis, order)
    if grid.is_geometric:
        d1 = _uniform_diff(values, grid.natural_spacing, axis, order)
        d2 = (d2 - d1) * _radial_factor(grid, values, axis, -2.0)
    return d2


def tail_estimate(density, grid: Grid2D) -> float:
    """
    Estimate ∫ of a density outside [-X, X]² assuming c/|x|⁴ decay.

    c is the mean of density·|x|⁴ over the boundary nodes, and the
    exterior integral of |x|⁻⁴ is (π/2 + 1)/X².
    """
    density = np.asarray(density, dtype=float)
    x1, x2 = grid.mesh()
    weighted = density * (x1**2 + x2**2) ** 2
    ring = np.concatenate([weighted[0, :], weighted[-1, :], weighted[1:-1, 0], weighted[1:-1, -1]])
    c = float(np.mean(ring))
    return c * (np.pi / 2.0 + 1.0) / grid.half_width**2


def _check_mass(mass: np.ndarray, n: int) -> np.ndarray:
    mass = np.asarray(mass, dtype=float)
    if mass.shape != (n,):
        raise InvalidInputError(f"mass must have {n} entries, got shape {mass.shape}")
    if not np.all(np.isfinite(mass)) or np.any(mass <= 0):
        raise InvalidInputError("mass entries must be positive and finite")
    return mass


def _tridiagonal_matvec(d: np.ndarray, e: np.ndarray, x: np.ndarray) -> np.ndarray:
    out = d * x
    out[:-1] += e * x[1:]
    out[1:] += e * x[:-1]
    return out


def count_below(stiffness_diag, stiffness_off, mass, sigma: float) -> int:
    """
    Number of eigenvalues of K v = λ M v below sigma.

    Counts the negative pivots of the LDLᵀ factorization of K - σM
    (Sylvester's law of inertia), on the unscaled pencil.
    """
    d = np.asarray(stiffness_diag, dtype=float)
    e = np.asarray(stiffness_off, dtype=float)
    squares = (e**2).tolist()
    shifted = (d - sigma * np.asarray(mass, dtype=float)).tolist()
    pivmin = np.finfo(float).tiny * max(1.0, max(squares, default=1.0))
    count = 0
    pivot = shifted[0]
    for i, diagonal in enumerate(shifted):
        if i:
            pivot = diagonal - squares[i - 1] / pivot
        if abs(pivot) < pivmin:
            pivot = -pivmin
        if pivot < 0:
            count += 1
    return count


def _inverse_iteration(d: np.ndarray, e: np.ndarray, mass: np.ndarray, shift: float, v: np.ndarray) -> np.ndarray:
    banded = np.zeros((3, d.size))
    banded[0, 1:] = e
    banded[1] = d - shift * mass
    banded[2, :-1] = e
    for _ in range(INVERSE_ITERATION_STEPS):
        v = linalg.solve_banded((1, 1), banded, mass * v)
        v = v / np.linalg.norm(v)
    return v


def min_generalized_eig(stiffness_diag, stiffness_off, mass) -> Tuple[float, np.ndarray]:
    """
    Smallest eigenpair of K v = λ M v for symmetric tridiagonal K and diagonal M > 0.

    The eigenvalue is first located by Sturm-sequence bisection on M^{-1/2} K M^{-1/2}
    (LAPACK stebz, run to relative accuracy). The eigenvector then comes from
    inverse iteration on the unscaled pencil, λ is its Rayleigh quotient, and a
    Sturm count of K - σM certifies that nothing lies below λ.

    Args:
        stiffness_diag: Diagonal of K (n entries)
        stiffness_off: Off-diagonal of K (n - 1 entries)
        mass: Diagonal of M (n entries)

    Returns:
        (eigenvalue, eigenvector normalized to unit Euclidean length)
    """
    d = np.asarray(stiffness_diag, dtype=float)
    e = np.asarray(stiffness_off, dtype=float)
    n = d.size
    if n == 0:
        raise InvalidInputError("stiffness must have at least one entry")
    if e.shape != (n - 1,):
        raise InvalidInputError(f"off-diagonal must have {n - 1} entries, got shape {e.shape}")
    if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
        raise InvalidInputError("stiffness contains non-finite entries")
    mass = _check_mass(mass, n)
    s = 1.0 / np.sqrt(mass)
    try:
        w = linalg.eigh_tridiagonal(
            d * s**2,
            e * s[:-1] * s[1:],
            eigvals_only=True,
            select="i",
            select_range=(0, 0),
            tol=np.finfo(float).tiny,
        )
    except (linalg.LinAlgError, ValueError) as err:
        raise NumericFailureError(f"tridiagonal eigensolver failed: {err}") from err
    if w.size == 0 or not np.isfinite(w[0]):
        raise NumericFailureError("eigensolver returned no finite eigenvalue")

    eps = np.finfo(float).eps
    k_norm = float(np.max(np.abs(d)) + (2.0 * np.max(np.abs(e)) if n > 1 else 0.0))
    estimate = float(w[0])
    # positive start: the lowest mode of a Sturm-Liouville pencil has one sign
    v = np.random.default_rng(0).uniform(0.5, 1.5, size=n)
    shift = estimate - 1e-10 * abs(estimate) - eps * k_norm / float(np.max(mass))
    try:
        v = _inverse_iteration(d, e, mass, shift, v)
    except (linalg.LinAlgError, ValueError) as err:
        raise NumericFailureError(f"inverse iteration failed at shift {shift:.6e}: {err}") from err

    kv = _tridiagonal_matvec(d, e, v)
    mv = mass * v
    m_norm = float(v @ mv)
    lam = float(v @ kv) / m_norm
    residual = float(np.linalg.norm(kv - lam * mv))
    residual_tol = max(EIG_RESIDUAL_TOL, 16.0 * eps * k_norm * np.sqrt(n))
    if not np.isfinite(residual) or residual > residual_tol:
        raise NumericFailureError(f"eigenpair residual {residual:.3e} exceeds {residual_tol:.3e}")

    margin = EIG_RELATIVE_TOL * abs(lam) + 64.0 * eps * k_norm / m_norm
    below = count_below(d, e, mass, lam - margin)
    if below:
        raise NumericFailureError(f"{below} eigenvalue(s) lie below the computed minimum {lam:.6e}")
    logger.debug(f"min_generalized_eig: n={n}, lambda={lam:.6e} (bisection estimate {estimate:.6e})")
    return lam, v


# Smooth test functions on radial grids


def log_bump(grid: RadialGrid, lo: float, hi: float) -> np.ndarray:
    """exp(-1/(1 - u²)) with u affine in ln ρ, supported on (lo, hi)."""
    if not 0 < lo < hi:
        raise InvalidInputError(f"bump support must satisfy 0 < lo < hi, got ({lo}, {hi})")
    t = np.log(np.asarray(grid.nodes))
    a, b = np.log(lo), np.log(hi)
    u = (2.0 * t - a - b) / (b - a)
    inside = np.abs(u) < 1.0
    out = np.zeros(grid.n)
    out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
    return out


def random_log_bumps(grid: RadialGrid, rng: np.random.Generator, n_bumps: int = 3) -> np.ndarray:
    """Sum of Gaussians in ln ρ with random amplitudes, centred in the middle of the grid."""
    t = np.log(np.asarray(grid.nodes))
    lo, hi = t[0], t[-1]
    values = np.zeros(grid.n)
    for _ in range(n_bumps):
        center = rng.uniform(lo + 0.35 * (hi - lo), hi - 0.35 * (hi - lo))
        width = rng.uniform(0.2, 0.5)
        values += rng.normal() * np.exp(-((t - center) ** 2) / (2.0 * width**2))
    return values
