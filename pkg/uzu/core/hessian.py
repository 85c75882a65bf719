"""
The Hessian at the skyrmion in moving-frame coordinates.

A tangent perturbation u1 J1 + u2 J2 of the hedgehog splits into Fourier
modes in ψ; mode k contributes the radial quadratic form

    H_k^r[α, β] = ∫ [α′² + β′² + P_k(ρ)(α² + β²) + 4k C(ρ) αβ] ρ dρ

with P_k = k²/ρ² - θ′² + cos²θ/ρ² + 4r² sinθ/ρ and C = cosθ/ρ² - 2r² sinθ/ρ.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from uzu.core.energy import hessian_quadratic_form
from uzu.core.numerics import (
    central_diff,
    min_generalized_eig,
    radial_integral,
)
from uzu.core.skyrmion import PROFILE, frame, polar
from uzu.models.fields import MagnetizationField, PolarField, RadialFunction, TangentField2D
from uzu.models.grids import Grid2D, PolarGrid, RadialGrid
from uzu.models.reports import ModeReport, SubstitutionSides
from uzu.models.run_config import MASS_WEIGHTS
from uzu.utils.config import DEFAULT_FD_ORDER, DEFAULT_MASS, DEFAULT_N_RADIAL, DEFAULT_RHO_MAX, DEFAULT_RHO_MIN
from uzu.utils.errors import InvalidInputError

logger = logging.getLogger(__name__)

# 3-point Gauss–Legendre rule on [0, 1]
_GAUSS_T = np.array([0.5 - 0.5 * np.sqrt(0.6), 0.5, 0.5 + 0.5 * np.sqrt(0.6)])
_GAUSS_W = np.array([5.0, 8.0, 5.0]) / 18.0

Profile = Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class ModeForm:
    """The mode-k quadratic form at coupling r."""

    k: int
    r: float

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 0:
            raise InvalidInputError(f"Fourier mode must be a nonnegative integer, got {self.k}")
        if not np.isfinite(self.r) or self.r < 0:
            raise InvalidInputError(f"coupling r must be nonnegative, got {self.r}")

    def potential(self, rho) -> np.ndarray:
        """P_k(ρ), the coefficient of α² + β²."""
        rho = np.asarray(rho, dtype=float)
        s, c, dt = PROFILE.sin_theta(rho), PROFILE.cos_theta(rho), PROFILE.dtheta(rho)
        return (self.k**2 + c**2) / rho**2 - dt**2 + 4.0 * self.r**2 * s / rho

    def coupling(self, rho) -> np.ndarray:
        """C(ρ); the cross term is 4k C αβ."""
        rho = np.asarray(rho, dtype=float)
        return PROFILE.cos_theta(rho) / rho**2 - 2.0 * self.r**2 * PROFILE.sin_theta(rho) / rho

    def symmetric_potential(self, rho) -> np.ndarray:
        """P_k + 2kC = (k + cosθ)²/ρ² - θ′² + 4r²(1 - k) sinθ/ρ, the potential on α = β."""
        rho = np.asarray(rho, dtype=float)
        s, c, dt = PROFILE.sin_theta(rho), PROFILE.cos_theta(rho), PROFILE.dtheta(rho)
        return (self.k + c) ** 2 / rho**2 - dt**2 + 4.0 * self.r**2 * (1 - self.k) * s / rho


def _same_grid(*functions: RadialFunction) -> RadialGrid:
    grid = functions[0].grid
    if any(f.grid != grid for f in functions[1:]):
        raise InvalidInputError("radial functions live on different grids")
    return grid


def mode_form_value(form: ModeForm, alpha: RadialFunction, beta: RadialFunction, order: int = DEFAULT_FD_ORDER) -> float:
    """H_k^r[α, β] by quadrature in weak form."""
    grid = _same_grid(alpha, beta)
    rho = np.asarray(grid.nodes)
    a, b = alpha.values, beta.values
    da, db = central_diff(a, grid, order=order), central_diff(b, grid, order=order)
    integrand = da**2 + db**2 + form.potential(rho) * (a**2 + b**2) + 4.0 * form.k * form.coupling(rho) * a * b
    return float(radial_integral(integrand, grid, weight=1.0))


def mode_form_r2_slope(k: int, alpha: RadialFunction) -> float:
    """d H_k^r[α, α] / d(r²) = 8(1 - k)∫ sinθ α² dρ."""
    rho = np.asarray(alpha.nodes)
    return float(8.0 * (1 - k) * radial_integral(PROFILE.sin_theta(rho) * alpha.values**2, alpha.grid))


def mode_zero_substituted(xi: RadialFunction, eta: RadialFunction, order: int = DEFAULT_FD_ORDER) -> float:
    """H_0^0[(sinθ)ξ, (sinθ)η] = ∫ sin²θ (ξ′² + η′²) ρ dρ."""
    grid = _same_grid(xi, eta)
    s = PROFILE.sin_theta(np.asarray(grid.nodes))
    dx, de = central_diff(xi.values, grid, order=order), central_diff(eta.values, grid, order=order)
    return float(radial_integral(s**2 * (dx**2 + de**2), grid, weight=1.0))


def mode_one_substituted(xi: RadialFunction, eta: RadialFunction, r: float, order: int = DEFAULT_FD_ORDER) -> float:
    """
    H_1^r[α, β] for α = (sinθ/ρ)ξ, β = (sinθ/ρ)η, written as a sum of squares:
    ∫ (sin²θ/ρ)[(ξ′ - (ξ-η)/ρ)² + (η′ + (ξ-η)/ρ)²] dρ + 4r²∫ sinθ (α - β)² dρ.
    """
    grid = _same_grid(xi, eta)
    rho = np.asarray(grid.nodes)
    s = PROFILE.sin_theta(rho)
    dx, de = central_diff(xi.values, grid, order=order), central_diff(eta.values, grid, order=order)
    gap = (xi.values - eta.values) / rho
    squares = s**2 / rho * ((dx - gap) ** 2 + (de + gap) ** 2)
    helical = 4.0 * r**2 * s * (s / rho * (xi.values - eta.values)) ** 2
    return float(radial_integral(squares + helical, grid))


def substitution_identity_check(
    A: RadialFunction,
    V: RadialFunction,
    psi: RadialFunction,
    g: RadialFunction,
    order: int = DEFAULT_FD_ORDER,
) -> SubstitutionSides:
    """
    Both sides of ∫(Lf)f = ∫ψ²A g′² + ∫(Lψ)ψ g² for f = ψg, L = -d/dρ A d/dρ + V.

    The left side is taken in weak form ∫A f′² + V f².
    """
    grid = _same_grid(A, V, psi, g)
    if np.any(psi.values <= 0):
        raise InvalidInputError("psi must be positive on the whole grid")
    f = psi.values * g.values
    df = central_diff(f, grid, order=order)
    dg = central_diff(g.values, grid, order=order)
    dpsi = central_diff(psi.values, grid, order=order)
    l_psi = -central_diff(A.values * dpsi, grid, order=order) + V.values * psi.values

    lhs = radial_integral(A.values * df**2 + V.values * f**2, grid)
    kernel_term = radial_integral(l_psi * psi.values * g.values**2, grid)
    rhs = radial_integral(psi.values**2 * A.values * dg**2, grid) + kernel_term
    return SubstitutionSides(lhs=float(lhs), rhs=float(rhs), kernel_term=float(kernel_term))


# Polar-grid forms


def _as_values(f, grid: RadialGrid) -> np.ndarray:
    if f is None:
        return np.zeros(grid.n)
    if isinstance(f, RadialFunction):
        if f.grid != grid:
            raise InvalidInputError("mode coefficient lives on a different radial grid")
        return np.asarray(f.values)
    return np.asarray(f, dtype=float)


def polar_field_from_modes(grid: PolarGrid, coefficients: Dict[int, Sequence]) -> PolarField:
    """
    Build u1 = Σ α1ᵏ cos kψ + β1ᵏ sin kψ and u2 = Σ α2ᵏ cos kψ + β2ᵏ sin kψ.

    Args:
        grid: Polar grid
        coefficients: Mode k -> (α1, β1, α2, β2); entries may be RadialFunction,
            arrays or None (zero). β entries of mode 0 are ignored.

    Returns:
        PolarField declaring the given modes
    """
    rho_grid = grid.radial
    u1 = np.zeros((rho_grid.n, grid.n_psi))
    u2 = np.zeros_like(u1)
    for k, (a1, b1, a2, b2) in coefficients.items():
        cos_k, sin_k = np.cos(k * grid.psi), np.sin(k * grid.psi)
        u1 += np.outer(_as_values(a1, rho_grid), cos_k)
        u2 += np.outer(_as_values(a2, rho_grid), cos_k)
        if k > 0:
            u1 += np.outer(_as_values(b1, rho_grid), sin_k)
            u2 += np.outer(_as_values(b2, rho_grid), sin_k)
    return PolarField(grid, u1, u2, tuple(coefficients))


def _d_psi(u: np.ndarray) -> np.ndarray:
    """Spectral derivative along the periodic ψ axis (axis 1)."""
    n = u.shape[1]
    modes = np.fft.rfftfreq(n, d=1.0 / n)
    spectrum = np.fft.rfft(u, axis=1) * (1j * modes)
    if n % 2 == 0:
        spectrum[:, -1] = 0.0
    return np.fft.irfft(spectrum, n=n, axis=1)


def rescaled_hessian_frame(field: PolarField, r: float, order: int = DEFAULT_FD_ORDER) -> float:
    """
    The rescaled Hessian in frame coordinates:
    ∫ |∇u|² + (2cosθ/ρ² - 4r² sinθ/ρ) u×∂ψu + (-θ′² + cos²θ/ρ² + 4r² sinθ/ρ)(u1² + u2²) dx
    with u×∂ψu = u1 ∂ψu2 - u2 ∂ψu1.
    """
    radial = field.grid.radial
    rho = np.asarray(radial.nodes)[:, None]
    s, c, dt = PROFILE.sin_theta(rho), PROFILE.cos_theta(rho), PROFILE.dtheta(rho)
    u1, u2 = field.u1, field.u2
    p1, p2 = _d_psi(u1), _d_psi(u2)
    r1, r2 = central_diff(u1, radial, axis=0, order=order), central_diff(u2, radial, axis=0, order=order)

    density = (
        r1**2
        + r2**2
        + (p1**2 + p2**2) / rho**2
        + (2.0 * c / rho**2 - 4.0 * r**2 * s / rho) * (u1 * p2 - u2 * p1)
        + (-(dt**2) + c**2 / rho**2 + 4.0 * r**2 * s / rho) * (u1**2 + u2**2)
    )
    angular = 2.0 * np.pi * np.mean(density, axis=1)
    return float(radial_integral(angular, radial, weight=1.0))


def mode_coefficients(field: PolarField) -> Dict[int, Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]:
    """Recover (α1, β1, α2, β2) per declared mode from the ψ samples."""
    n = field.grid.n_psi
    c1, c2 = np.fft.rfft(field.u1, axis=1) / n, np.fft.rfft(field.u2, axis=1) / n
    modes = field.modes or tuple(range(field.grid.max_mode + 1))
    out = {}
    for k in modes:
        if k == 0:
            zero = np.zeros(field.grid.radial.n)
            out[k] = (c1[:, 0].real, zero, c2[:, 0].real, zero)
        else:
            out[k] = (2.0 * c1[:, k].real, -2.0 * c1[:, k].imag, 2.0 * c2[:, k].real, -2.0 * c2[:, k].imag)
    return out


def mode_split_check(field: PolarField, r: float, order: int = DEFAULT_FD_ORDER) -> Tuple[float, float]:
    """
    The frame form evaluated directly and as
    2π H_0[α1⁰, α2⁰] + π Σ_k (H_k[α1ᵏ, β2ᵏ] + H_k[β1ᵏ, -α2ᵏ]).
    """
    full = rescaled_hessian_frame(field, r, order)
    radial = field.grid.radial
    split = 0.0
    for k, (a1, b1, a2, b2) in mode_coefficients(field).items():
        form = ModeForm(k, r)
        if k == 0:
            split += 2.0 * np.pi * mode_form_value(form, RadialFunction(radial, a1), RadialFunction(radial, a2), order)
        else:
            split += np.pi * (
                mode_form_value(form, RadialFunction(radial, a1), RadialFunction(radial, b2), order)
                + mode_form_value(form, RadialFunction(radial, b1), RadialFunction(radial, -a2), order)
            )
    logger.debug(f"mode split: full={full:.10g}, split={split:.10g}")
    return full, float(split)


def tangent_field_from_frame(
    grid: Grid2D,
    profile: Profile,
    scale: float = 1.0,
    base: Optional[MagnetizationField] = None,
) -> TangentField2D:
    """
    Sample φ(x) = u1 J1 + u2 J2 at (ρ, ψ) = (|x|/scale, arg x) on a Cartesian grid.

    Args:
        grid: Cartesian grid
        profile: Callable (ρ, ψ) -> (u1, u2) on arrays; must vanish near ρ = 0
        scale: Scale of the skyrmion the frame belongs to
        base: Optional base field to attach (tangency is then checked)

    Returns:
        TangentField2D, zero at the origin node
    """
    if scale <= 0:
        raise InvalidInputError(f"scale must be positive, got {scale}")
    rho, psi = polar(grid.points())
    rho = rho / scale
    values = np.zeros(rho.shape + (3,))
    inside = rho > 0
    j1, j2 = frame(rho[inside], psi[inside])
    u1, u2 = profile(rho[inside], psi[inside])
    values[inside] = np.asarray(u1)[:, None] * j1 + np.asarray(u2)[:, None] * j2
    return TangentField2D(grid, values, base)


def rescaled_hessian_2d(phi: TangentField2D, r: float, base: MagnetizationField, order: int = DEFAULT_FD_ORDER) -> float:
    """
    H_r(φ) = ‖∇φ‖² + 4r²⟨curl φ, φ⟩ + 4r²‖φ3‖² - ∫Λ_r(h)|φ|² on a Cartesian grid,
    for base the hedgehog at scale 1.
    """
    return hessian_quadratic_form(phi, base, 2.0 * r**2, 4.0 * r**2, order)


# Discretized eigenproblem


def default_radial_grid() -> RadialGrid:
    return RadialGrid(DEFAULT_RHO_MIN, DEFAULT_RHO_MAX, DEFAULT_N_RADIAL, "geometric")


def _element_matrices(nodes: np.ndarray, weight: Callable[[np.ndarray], np.ndarray]):
    """
    P1 element integrals of weight(ρ) φ_a φ_b by 3-point Gauss, assembled
    into (diagonal, off-diagonal) over all nodes.
    """
    a, h = nodes[:-1], np.diff(nodes)
    rho_g = a[:, None] + h[:, None] * _GAUSS_T[None, :]
    wg = weight(rho_g) * h[:, None] * _GAUSS_W[None, :]
    left = np.sum(wg * (1.0 - _GAUSS_T) ** 2, axis=1)
    right = np.sum(wg * _GAUSS_T**2, axis=1)
    cross = np.sum(wg * (1.0 - _GAUSS_T) * _GAUSS_T, axis=1)
    diag = np.zeros(nodes.size)
    diag[:-1] += left
    diag[1:] += right
    return diag, cross


def _stiffness(nodes: np.ndarray):
    """P1 stiffness of ∫α′² ρ dρ; element weight (ρ_i + ρ_{i+1})/(2h_i) is exact."""
    w = (nodes[:-1] + nodes[1:]) / (2.0 * np.diff(nodes))
    diag = np.zeros(nodes.size)
    diag[:-1] += w
    diag[1:] += w
    return diag, -w


def _lumped_mass(nodes: np.ndarray, mass: str) -> np.ndarray:
    if mass not in MASS_WEIGHTS:
        raise InvalidInputError(f"mass must be one of {MASS_WEIGHTS}, got {mass!r}")
    h = np.diff(nodes)
    share = np.zeros(nodes.size)
    share[:-1] += h / 2.0
    share[1:] += h / 2.0
    return share / nodes if mass == "logarithmic" else share * nodes


def mode_eigenpair(
    form: ModeForm,
    grid: Optional[RadialGrid] = None,
    symmetric: bool = True,
    mass: str = DEFAULT_MASS,
) -> Tuple[float, RadialFunction, RadialFunction]:
    """
    Lowest eigenpair of the discretized mode form with zero values at both ends.

    The symmetric problem restricts to α = β and minimizes H_k^r[α, α] / (2‖α‖²);
    the full problem minimizes H_k^r[α, β] / (‖α‖² + ‖β‖²). The norm is
    ∫ · dρ/ρ for mass="logarithmic" and ∫ · ρ dρ for mass="radial".

    The coupling block is the same on both diagonals, so the full problem
    splits into α + β (potential P + 2kC, the symmetric problem) and α - β
    (potential P - 2kC), each a tridiagonal pencil.
    """
    grid = grid or default_radial_grid()
    nodes = np.asarray(grid.nodes)
    s_diag, s_off = _stiffness(nodes)
    m = _lumped_mass(nodes, mass)[1:-1]
    p_diag, p_off = _element_matrices(nodes, lambda x: form.potential(x) * x)
    g_diag, g_off = _element_matrices(nodes, lambda x: 2.0 * form.k * form.coupling(x) * x)
    a_diag, a_off = (s_diag + p_diag)[1:-1], (s_off + p_off)[1:-1]
    g_diag, g_off = g_diag[1:-1], g_off[1:-1]

    lam, v = min_generalized_eig(a_diag + g_diag, a_off + g_off, m)
    sign = 1.0
    if not symmetric:
        lam_minus, v_minus = min_generalized_eig(a_diag - g_diag, a_off - g_off, m)
        logger.debug(f"mode {form.k}, r={form.r}: α+β {lam:.6e}, α-β {lam_minus:.6e}")
        if lam_minus < lam:
            lam, v, sign = lam_minus, v_minus, -1.0
        v = v / np.sqrt(2.0)

    alpha = np.concatenate([[0.0], v, [0.0]])
    logger.debug(f"mode {form.k}, r={form.r}: {'symmetric' if symmetric else 'full'} min eigenvalue {lam:.6e}")
    return lam, RadialFunction(grid, alpha), RadialFunction(grid, sign * alpha)


def min_mode_eigenvalue(
    form: ModeForm,
    grid: Optional[RadialGrid] = None,
    symmetric: bool = True,
    mass: str = DEFAULT_MASS,
) -> float:
    """Smallest eigenvalue of the discretized mode form."""
    return mode_eigenpair(form, grid, symmetric, mass)[0]


def mode_report(
    form: ModeForm,
    alpha: RadialFunction,
    beta: RadialFunction,
    with_eig: bool = False,
    symmetric: bool = True,
    mass: str = DEFAULT_MASS,
    eig_grid: Optional[RadialGrid] = None,
) -> ModeReport:
    """Evaluate a mode form on a test pair, optionally with its lowest eigenvalue."""
    grid = _same_grid(alpha, beta)
    min_eig = min_mode_eigenvalue(form, eig_grid, symmetric, mass) if with_eig else None
    return ModeReport(
        k=form.k,
        r=form.r,
        value=mode_form_value(form, alpha, beta),
        n=grid.n,
        rho_min=grid.rho_min,
        rho_max=grid.rho_max,
        min_eig=min_eig,
    )
