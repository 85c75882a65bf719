import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis.strategies import floats
from scipy import linalg

from uzu.core.numerics import (
    central_diff,
    count_below,
    integrate_grid2d,
    log_bump,
    min_generalized_eig,
    radial_integral,
    second_diff,
    tail_estimate,
)
from uzu.models.grids import Grid2D, RadialGrid
from uzu.utils.errors import InvalidInputError


@pytest.mark.parametrize("mode", ["uniform", "geometric"])
def test_radial_integral_polynomial(mode):
    grid = RadialGrid(1.0, 2.0, 2001, mode)
    # ∫₁² ρ dρ = 3/2
    assert radial_integral(np.ones(grid.n), grid, weight=1.0) == pytest.approx(1.5, rel=1e-6)


def test_radial_integral_gaussian_on_geometric_grid():
    grid = RadialGrid(1e-4, 10.0, 3001, "geometric")
    rho = grid.nodes
    assert radial_integral(np.exp(-(rho**2)), grid, weight=1.0) == pytest.approx(0.5, rel=1e-6)


def test_radial_integral_rejects_wrong_length():
    grid = RadialGrid(1.0, 2.0, 11, "uniform")
    with pytest.raises(InvalidInputError):
        radial_integral(np.ones(10), grid)


@given(floats(min_value=-5, max_value=5), floats(min_value=-5, max_value=5))
@seed(2024)
@settings(max_examples=25, deadline=None)
def test_radial_integral_is_linear(a, b):
    grid = RadialGrid(0.1, 10.0, 501, "geometric")
    f, g = np.sin(grid.nodes), np.exp(-grid.nodes)
    combined = radial_integral(a * f + b * g, grid, weight=1.0)
    separate = a * radial_integral(f, grid, weight=1.0) + b * radial_integral(g, grid, weight=1.0)
    assert combined == pytest.approx(separate, abs=1e-10)


def test_fourth_order_beats_second_order():
    grid = RadialGrid(0.0 + 1e-9, np.pi, 201, "uniform")
    exact = np.cos(grid.nodes)
    err2 = np.max(np.abs(central_diff(np.sin(grid.nodes), grid, order=2) - exact))
    err4 = np.max(np.abs(central_diff(np.sin(grid.nodes), grid, order=4) - exact)[2:-2])
    assert err4 < err2 / 100


def test_geometric_derivatives_of_cubic():
    grid = RadialGrid(0.1, 10.0, 2001, "geometric")
    rho = grid.nodes
    interior = slice(2, -2)
    np.testing.assert_allclose(central_diff(rho**3, grid, order=4)[interior], 3 * rho[interior] ** 2, rtol=1e-8)
    np.testing.assert_allclose(second_diff(rho**3, grid, order=4)[interior], 6 * rho[interior], rtol=1e-7)


def test_grid_integral_of_gaussian():
    grid = Grid2D(8.0, 201)
    x1, x2 = grid.mesh()
    assert integrate_grid2d(np.exp(-(x1**2 + x2**2)), grid) == pytest.approx(np.pi, rel=1e-8)


@given(floats(min_value=-10, max_value=10), floats(min_value=-10, max_value=10))
@seed(2023)
@settings(max_examples=50, deadline=None)
def test_grid_integral_is_linear(a, b):
    grid = Grid2D(3.0, 31)
    rng = np.random.default_rng(7)
    f, g = rng.normal(size=(2, 31, 31))
    combined = integrate_grid2d(a * f + b * g, grid)
    expected = a * integrate_grid2d(f, grid) + b * integrate_grid2d(g, grid)
    assert combined == pytest.approx(expected, rel=1e-10, abs=1e-10)


def test_grid_integral_is_second_order():
    # ∫∫ x1² x2² over [-1, 1]² = 4/9
    errors = []
    for n in (21, 41, 81):
        grid = Grid2D(1.0, n)
        x1, x2 = grid.mesh()
        errors.append(abs(integrate_grid2d(x1**2 * x2**2, grid) - 4.0 / 9.0))
    assert errors[0] / errors[1] == pytest.approx(4.0, rel=0.05)
    assert errors[1] / errors[2] == pytest.approx(4.0, rel=0.05)


def test_tail_estimate_recovers_algebraic_decay():
    grid = Grid2D(20.0, 401)
    x1, x2 = grid.mesh()
    density = 1.0 / (1.0 + x1**2 + x2**2) ** 2
    inside = integrate_grid2d(density, grid)
    # ∫_ℝ² (1 + |x|²)⁻² = π
    assert abs(inside - np.pi) > 5e-3
    assert inside + tail_estimate(density, grid) == pytest.approx(np.pi, abs=1e-3)


def dirichlet_laplacian(n):
    h = np.pi / (n + 1)
    return np.full(n, 2.0 / h), np.full(n - 1, -1.0 / h), np.full(n, h)


def test_min_generalized_eig_of_dirichlet_laplacian():
    diag, off, mass = dirichlet_laplacian(999)
    lam, v = min_generalized_eig(diag, off, mass)
    # -u'' = λu on (0, π) with u(0) = u(π) = 0 has λ₁ = 1
    assert lam == pytest.approx(1.0, rel=1e-5)
    assert np.linalg.norm(v) == pytest.approx(1.0)
    assert np.all(v > 0) or np.all(v < 0)


def test_min_generalized_eig_trivial_pencils():
    lam, v = min_generalized_eig(np.ones(5), np.zeros(4), np.ones(5))
    assert lam == pytest.approx(1.0, rel=1e-12)
    lam, v = min_generalized_eig(np.array([5.0, 1.0, 9.0]), np.zeros(2), np.ones(3))
    assert lam == pytest.approx(1.0, rel=1e-12)
    assert abs(v[1]) == pytest.approx(1.0)


def graded_pencil(mass_weight):
    """P1 stiffness of ∫(α′² + α²/ρ²)ρ dρ on [1e-4, 1e4] with a lumped dρ/ρ or ρ dρ mass."""
    rho = np.asarray(RadialGrid(1e-4, 1e4, 1200, "geometric").nodes)
    h = np.diff(rho)
    w = (rho[:-1] + rho[1:]) / (2.0 * h)
    share = np.zeros(rho.size)
    share[:-1] += h / 2.0
    share[1:] += h / 2.0
    diag = np.zeros(rho.size)
    diag[:-1] += w
    diag[1:] += w
    diag += share / rho
    mass = share / rho if mass_weight == "logarithmic" else share * rho
    return diag[1:-1], -w[1:-1], mass[1:-1]


@pytest.mark.parametrize("mass_weight", ["logarithmic", "radial"])
def test_min_generalized_eig_on_graded_mass(mass_weight):
    diag, off, mass = graded_pencil(mass_weight)
    lam, v = min_generalized_eig(diag, off, mass)
    kv = diag * v
    kv[:-1] += off * v[1:]
    kv[1:] += off * v[:-1]
    assert lam > 0
    assert np.linalg.norm(kv - lam * mass * v) <= 1e-10
    assert (v @ kv) / (v @ (mass * v)) == pytest.approx(lam, rel=1e-8)
    # lam is the lowest eigenvalue: nothing below it, one just above it
    assert count_below(diag, off, mass, lam * (1.0 - 1e-6)) == 0
    assert count_below(diag, off, mass, lam * (1.0 + 1e-6)) == 1


def test_min_generalized_eig_matches_dense_solver_for_log_mass():
    diag, off, mass = graded_pencil("logarithmic")
    dense = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    reference = linalg.eigh(dense, np.diag(mass), eigvals_only=True, subset_by_index=[0, 0])[0]
    assert min_generalized_eig(diag, off, mass)[0] == pytest.approx(reference, rel=1e-8)


def test_count_below_dirichlet_laplacian():
    diag, off, mass = dirichlet_laplacian(199)
    # discrete eigenvalues sit just below 1, 4 and 9
    assert count_below(diag, off, mass, 0.5) == 0
    assert count_below(diag, off, mass, 2.0) == 1
    assert count_below(diag, off, mass, 10.0) == 3


def test_min_generalized_eig_rejects_bad_input():
    diag, off, mass = dirichlet_laplacian(10)
    with pytest.raises(InvalidInputError):
        min_generalized_eig(diag, off[:-1], mass)
    with pytest.raises(InvalidInputError):
        min_generalized_eig(diag, off, -mass)


def test_log_bump_support():
    grid = RadialGrid(0.1, 10.0, 1001, "geometric")
    bump = log_bump(grid, 1.0, 2.0)
    rho = grid.nodes
    assert np.all(bump[(rho <= 1.0) | (rho >= 2.0)] == 0.0)
    assert np.all(bump[(rho > 1.01) & (rho < 1.99)] > 0.0)
    with pytest.raises(InvalidInputError):
        log_bump(grid, 2.0, 1.0)
