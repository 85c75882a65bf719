import numpy as np
import pytest

from uzu.core.energy import hessian_form_2d, total_energy, perturb_field
from uzu.core.hessian import ModeForm, min_mode_eigenvalue, mode_form_value, rescaled_hessian_2d
from uzu.core.instability import (
    alpha_from_xi,
    assemble_unstable_field,
    f_k_r,
    find_negative_direction,
    hardy_chi,
    hardy_dchi,
    hardy_ratio,
    hardy_slack,
    limit_coefficient,
    limit_form,
    make_hardy_function,
    rescale_xi,
    threshold_scan,
    threshold_table,
    transformed_mode_form,
)
from uzu.core.numerics import log_bump, radial_integral
from uzu.core.skyrmion import sample_field, skyrmion_at_scale
from uzu.models.fields import RadialFunction
from uzu.models.grids import Grid2D, RadialGrid
from uzu.utils.errors import InvalidInputError, NoSignChangeError


def test_f_vanishes_for_mode_one():
    rho = np.geomspace(1e-3, 1e3, 50)
    np.testing.assert_allclose(f_k_r(rho, 1, 2.0), 0.0, atol=1e-12)


@pytest.mark.parametrize("k, r", [(2, 0.5), (3, 1.0), (4, 2.0)])
def test_f_decay_rate(k, r):
    rho = 1e4
    assert rho**5 * f_k_r(rho, k, r) == pytest.approx(-8.0 * limit_coefficient(k, r), rel=1e-6)


def test_f_rejects_nonpositive_radius():
    with pytest.raises(InvalidInputError):
        f_k_r(np.array([0.0, 1.0]), 3, 1.0)


def test_limit_coefficient_examples():
    assert limit_coefficient(1, 5.0) == 0.0
    assert limit_coefficient(3, 1.0) == pytest.approx(4.0)
    assert limit_coefficient(2, 0.5) == pytest.approx(-3.0)


@pytest.mark.parametrize("k, r", [(2, 1.3), (3, 0.7), (5, 2.0)])
def test_transformed_form_matches_mode_form(k, r, radial_grid):
    xi = RadialFunction(radial_grid, log_bump(radial_grid, 0.2, 20.0))
    alpha = alpha_from_xi(xi)
    direct = mode_form_value(ModeForm(k, r), alpha, alpha)
    assert transformed_mode_form(k, r, xi) == pytest.approx(direct, rel=1e-6)


def test_rescale_identity(radial_grid):
    xi = RadialFunction(radial_grid, log_bump(radial_grid, 0.5, 5.0))
    same = rescale_xi(xi, 1.0)
    assert same.grid == radial_grid
    np.testing.assert_array_equal(same.values, xi.values)


def test_rescale_dilates_support(radial_grid):
    xi = RadialFunction(radial_grid, log_bump(radial_grid, 0.5, 5.0))
    lo, hi = xi.support()
    moved = rescale_xi(xi, 0.1)
    assert moved.support() == pytest.approx((lo * 10.0, hi * 10.0))
    assert np.max(moved.values) == pytest.approx(100.0 * np.max(xi.values))


def test_rescale_onto_grid_by_spline(radial_grid):
    xi = RadialFunction(radial_grid, log_bump(radial_grid, 0.5, 5.0))
    moved = rescale_xi(xi, 0.5, radial_grid)
    expected = log_bump(radial_grid.scaled(0.5), 0.5, 5.0) / 0.25
    np.testing.assert_allclose(moved.values, expected, atol=1e-6)


def test_rescale_overflow_raises(radial_grid):
    xi = RadialFunction(radial_grid, log_bump(radial_grid, 0.5, 50.0))
    with pytest.raises(InvalidInputError):
        rescale_xi(xi, 0.1, radial_grid)
    with pytest.raises(InvalidInputError):
        rescale_xi(xi, 0.0)


@pytest.mark.parametrize("k, r", [(3, 0.5), (3, 1.5), (2, 1.0)])
def test_dilated_form_tends_to_limit(k, r):
    grid = RadialGrid(0.5, 8.0, 2001)
    xi = RadialFunction(grid, log_bump(grid, 1.0, 4.0))
    target = limit_form(k, r, xi)
    errors = [abs(transformed_mode_form(k, r, rescale_xi(xi, lam)) - target) for lam in (1e-1, 1e-2, 1e-3)]
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 1e-4 * max(1.0, abs(target))


def test_limit_form_is_dilation_invariant():
    grid = RadialGrid(0.5, 8.0, 2001)
    xi = RadialFunction(grid, log_bump(grid, 1.0, 4.0))
    assert limit_form(3, 1.2, rescale_xi(xi, 1e-2)) == pytest.approx(limit_form(3, 1.2, xi), rel=1e-10)


def test_limit_form_in_terms_of_slack():
    xi = make_hardy_function(1e2).radial
    mass = radial_integral(xi.values**2, xi.grid, weight=-5.0)
    for k, r in [(2, 0.3), (3, 1.0), (3, 2.0), (6, 0.8)]:
        expected = 8.0 * (4.0 + hardy_slack(xi) - limit_coefficient(k, r)) * mass
        assert limit_form(k, r, xi) == pytest.approx(expected, rel=1e-9)


def test_hardy_family_approaches_quarter():
    ratios = [hardy_ratio(make_hardy_function(A).radial) for A in (1e2, 1e3, 1e4)]
    assert ratios[0] < ratios[1] < ratios[2]
    assert ratios[2] >= 1.0 / 4.3
    assert max(ratios) <= 0.25 + 1e-3


def test_narrow_bump_is_far_from_hardy_bound():
    grid = RadialGrid(0.05, 20.0, 4001)
    assert hardy_ratio(RadialFunction(grid, log_bump(grid, 1.0, 2.0))) < 0.2


def test_hardy_ratio_of_zero_raises(radial_grid):
    with pytest.raises(InvalidInputError):
        hardy_ratio(RadialFunction.zeros(radial_grid))


@pytest.mark.parametrize("A", [10.0, 1e3])
def test_hardy_audit(A):
    audit = make_hardy_function(A).audit()
    assert audit["chi_min"] == 0.0
    assert audit["chi_max"] == 1.0
    assert audit["plateau_gap"] < 1e-12
    assert audit["outside_max"] == 0.0
    assert 0 < audit["max_dchi_times_A"] < 1.45


def test_hardy_derivative_matches_difference_quotient():
    rho = np.array([0.6, 0.75, 0.9, 1.5, 12.0, 15.0, 18.0])
    h = 1e-6
    numeric = (hardy_chi(rho + h, 10.0) - hardy_chi(rho - h, 10.0)) / (2.0 * h)
    np.testing.assert_allclose(hardy_dchi(rho, 10.0), numeric, atol=1e-6)


def test_hardy_rejects_bad_inputs():
    with pytest.raises(InvalidInputError):
        make_hardy_function(1.0)
    with pytest.raises(InvalidInputError):
        make_hardy_function(100.0, RadialGrid(0.25, 100.0, 500))


@pytest.mark.parametrize("r", [1.2, 1.5])
def test_witness_found_above_threshold(r):
    search = find_negative_direction(3, r)
    assert search.found
    witness = search.witness
    assert witness.form_value < 0
    assert witness.certified_value < 0
    assert search.best_value <= witness.form_value
    assert min_mode_eigenvalue(ModeForm(3, r)) < 0


@pytest.mark.parametrize("r", [0.5, 0.8])
def test_no_witness_below_threshold(r):
    search = find_negative_direction(3, r)
    assert not search.found
    assert search.best_value > 0
    assert min_mode_eigenvalue(ModeForm(3, r)) >= -1e-8


@pytest.mark.parametrize("k, r", [(1, 2.0), (0, 2.0), (3, 0.0)])
def test_witness_rejects_bad_inputs(k, r):
    with pytest.raises(InvalidInputError):
        find_negative_direction(k, r)


@pytest.mark.parametrize("k, r", [(2, 0.3), (2, 2.0), (3, 0.5), (3, 2.0), (5, 1.5)])
def test_limit_sign_matches_coefficient(k, r):
    xi = make_hardy_function(1e4).radial
    gap = 4.0 + hardy_slack(xi) - limit_coefficient(k, r)
    assert np.sign(limit_form(k, r, xi)) == np.sign(gap)


def test_threshold_for_mode_three():
    estimate = threshold_scan(3)
    assert 0.98 <= estimate.r_c <= 1.02
    assert estimate.r_hi - estimate.r_lo <= 1e-3
    assert estimate.eig_lo >= 0 > estimate.eig_hi


def test_threshold_does_not_depend_on_mass_weight():
    logarithmic = threshold_scan(3, tol=1e-2)
    radial = threshold_scan(3, tol=1e-2, mass="radial")
    assert 0.98 <= radial.r_c <= 1.02
    assert radial.r_c == pytest.approx(logarithmic.r_c, abs=1e-2)
    assert radial.eig_lo >= 0 > radial.eig_hi


def test_mode_one_has_no_threshold():
    with pytest.raises(NoSignChangeError):
        threshold_scan(1)


def test_threshold_rejects_bad_bracket():
    with pytest.raises(InvalidInputError):
        threshold_scan(3, r_lo=2.0, r_hi=1.0)
    with pytest.raises(InvalidInputError):
        threshold_scan(3, tol=0.0)


def test_threshold_table():
    rows = threshold_table([1, 3], tol=1e-2)
    assert [k for k, _ in rows] == [1, 3]
    assert rows[0][1] is None
    assert rows[1][1].k == 3


def test_assemble_zero_profile():
    grid = RadialGrid(0.25, 16.0, 500)
    phi = assemble_unstable_field(RadialFunction.zeros(grid), grid=Grid2D(10.0, 101))
    assert np.all(phi.values == 0.0)


def test_unstable_direction_lowers_energy():
    r = 1.5
    xi = make_hardy_function(4.0).radial
    assert transformed_mode_form(3, r, xi) < 0

    h1 = sample_field(lambda x: skyrmion_at_scale(x, 1.0), Grid2D(10.0, 401))
    phi1 = assemble_unstable_field(xi, 3, h1.grid, 1.0, h1)
    assert rescaled_hessian_2d(phi1, r, h1) < 0

    scale = 2.0 * r
    base = sample_field(lambda x: skyrmion_at_scale(x, scale), Grid2D(30.0, 601))
    phi = assemble_unstable_field(xi, 3, base.grid, scale, base)
    assert phi.max_dot(base) < 1e-10
    assert hessian_form_2d(phi, r, base) < 0

    energy = total_energy(base, r).total
    for t in (0.02, 0.05):
        assert total_energy(perturb_field(base, phi, t), r).total < energy
