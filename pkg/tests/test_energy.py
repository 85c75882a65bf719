import numpy as np
import pytest

from uzu.checks import get_check
from uzu.checks.identities import FactorizationCheck, random_tangent_field
from uzu.core.energy import (
    degree,
    el_residual,
    el_residual_study,
    factorization_sides,
    hessian_form_2d,
    perturb_field,
    total_energy,
)
from uzu.core.numerics import integrate_grid2d
from uzu.core.skyrmion import constant_e3, sample_field, skyrmion_at_scale
from uzu.models.fields import TangentField2D
from uzu.models.grids import Grid2D
from uzu.models.reports import EnergyBreakdown
from uzu.models.run_config import RunConfig
from uzu.utils.errors import InvalidInputError


@pytest.mark.parametrize("r", [0.3, 0.5, 0.7, 1.0])
def test_skyrmion_energy_matches_closed_form(r):
    scale = 2.0 * r
    grid = Grid2D(40.0 * scale, 1001)
    breakdown = total_energy(sample_field(lambda x: skyrmion_at_scale(x, scale), grid), r)
    expected = 4.0 * np.pi * (1.0 - 2.0 * r**2)
    assert breakdown.corrected_total == pytest.approx(expected, rel=1e-2)
    assert breakdown.degree == pytest.approx(-1.0, abs=0.02)


def test_constant_field_has_no_energy(small_grid):
    breakdown = total_energy(sample_field(constant_e3, small_grid), 1.0)
    assert breakdown.total == 0.0
    assert breakdown.degree == 0.0


def test_total_is_sum_of_parts(small_grid):
    breakdown = total_energy(sample_field(lambda x: skyrmion_at_scale(x, 1.0), small_grid), 0.8, p=3.0)
    assert breakdown.total == pytest.approx(breakdown.dirichlet + 0.8 * breakdown.helicity + breakdown.potential)
    assert EnergyBreakdown.from_dict(breakdown.to_dict()) == breakdown


def test_energy_rejects_bad_parameters(small_grid):
    field = sample_field(constant_e3, small_grid)
    with pytest.raises(InvalidInputError):
        total_energy(field, 0.0)
    with pytest.raises(InvalidInputError):
        total_energy(field, 1.0, p=1.5)


def test_euler_lagrange_residual_converges_at_scale_2r(small_grid):
    r = 0.5
    _, _, ratio = el_residual_study(lambda x: skyrmion_at_scale(x, 2.0 * r), small_grid, r)
    assert ratio >= 3.0


def test_euler_lagrange_residual_stalls_at_wrong_scale(small_grid):
    r = 1.0
    _, fine, ratio = el_residual_study(lambda x: skyrmion_at_scale(x, 1.0), small_grid, r)
    assert ratio < 3.0
    assert fine > 1e-2


def test_residual_report_shape(small_grid):
    report = el_residual(sample_field(lambda x: skyrmion_at_scale(x, 1.0), small_grid), 0.5, order=4)
    assert report.residual.shape == (197, 197, 3)
    assert report.spacing == pytest.approx(0.1)


def test_factorization_on_skyrmion_and_perturbations(rng):
    r = 0.8
    grid = Grid2D(16.0, 201)
    base = sample_field(lambda x: skyrmion_at_scale(x, 2.0 * r), grid)
    sides = factorization_sides(base, r)
    assert sides.relative_gap < 1e-3
    # the helical square vanishes at the scaled skyrmion
    assert sides.square_sup < 1e-6
    for _ in range(10):
        phi = random_tangent_field(base, rng, width=3.0)
        perturbed = perturb_field(base, phi, 0.3)
        assert factorization_sides(perturbed, r).relative_gap < 1e-3


def test_factorization_gap_shrinks_with_spacing():
    # at r = 1 both sides vanish for the skyrmion; the gap is the tangency defect of the stencil
    gaps = []
    for n in (201, 401):
        base = sample_field(lambda x: skyrmion_at_scale(x, 2.0), Grid2D(20.0, n))
        gaps.append(factorization_sides(base, 1.0).relative_gap)
    assert gaps[1] < gaps[0] / 4.0
    assert gaps[1] < 2.5e-4


def test_factorization_check_passes_with_defaults():
    result = get_check("factorization")().run(RunConfig(command="verify"))
    assert result.passed, result.detail
    assert result.measured < FactorizationCheck.TOLERANCE


def test_perturb_field_requires_tangency(small_grid):
    base = sample_field(lambda x: skyrmion_at_scale(x, 1.0), small_grid)
    normal = TangentField2D(small_grid, np.asarray(base.values))
    with pytest.raises(InvalidInputError):
        perturb_field(base, normal, 0.1)


def test_perturbed_field_stays_unit(small_grid, rng):
    base = sample_field(lambda x: skyrmion_at_scale(x, 1.0), small_grid)
    moved = perturb_field(base, random_tangent_field(base, rng, width=2.0), 0.5)
    np.testing.assert_allclose(np.linalg.norm(moved.values, axis=-1), 1.0, atol=1e-12)


def test_hessian_of_zero_perturbation(small_grid):
    base = sample_field(lambda x: skyrmion_at_scale(x, 1.0), small_grid)
    zero = TangentField2D(small_grid, np.zeros((201, 201, 3)), base)
    assert hessian_form_2d(zero, 0.5, base) == 0.0


def test_hessian_matches_second_difference_of_energy(rng):
    r = 0.5
    grid = Grid2D(12.0, 241)
    base = sample_field(lambda x: skyrmion_at_scale(x, 2.0 * r), grid)
    phi = random_tangent_field(base, rng, width=2.0)
    t = 1e-3
    plus = total_energy(perturb_field(base, phi, t), r).total
    minus = total_energy(perturb_field(base, phi, -t), r).total
    zero = total_energy(base, r).total
    second = (plus - 2.0 * zero + minus) / t**2
    assert second == pytest.approx(hessian_form_2d(phi, r, base), rel=2e-2, abs=1e-3)


@pytest.mark.parametrize("scale", [0.5, 1.0, 2.0])
def test_skyrmion_energy_terms_scale(scale):
    grid = Grid2D(40.0 * scale, 1001)
    breakdown = total_energy(sample_field(lambda x: skyrmion_at_scale(x, scale), grid), 1.0)
    assert breakdown.dirichlet == pytest.approx(4.0 * np.pi, rel=1e-2)
    assert breakdown.helicity == pytest.approx(-8.0 * np.pi * scale, rel=1e-2)
    assert breakdown.potential == pytest.approx(2.0 * np.pi * scale**2, rel=1e-2)


def test_energy_change_is_half_the_hessian_form(rng):
    # exact for a critical base: E4[m + ξ] - E4[m] = ½⟨Lξ, ξ⟩ whenever |m + ξ| = 1
    r = 0.5
    grid = Grid2D(12.0, 361)
    base = sample_field(lambda x: skyrmion_at_scale(x, 2.0 * r), grid)
    base_energy = total_energy(base, r).total
    for _ in range(20):
        phi = random_tangent_field(base, rng, width=2.0)
        for t in (0.1, 0.2, 0.4):
            moved = perturb_field(base, phi, t)
            xi = TangentField2D(grid, moved.values - base.values)
            change = total_energy(moved, r).total - base_energy
            assert change == pytest.approx(0.5 * hessian_form_2d(xi, r, base), rel=2e-2, abs=2e-3)


def test_degree_converges_under_refinement():
    scale = 2.0
    coarse = Grid2D(40.0 * scale, 201)
    errors, degrees = [], []
    for grid in (coarse, coarse.refined()):
        field = sample_field(lambda x: skyrmion_at_scale(x, scale), grid)
        x1, x2 = grid.mesh()
        # exact density of the scaled skyrmion, integrated by the same rule
        density = -(scale**2) / (np.pi * (scale**2 + x1**2 + x2**2) ** 2)
        degrees.append(degree(field))
        errors.append(abs(degrees[-1] - integrate_grid2d(density, grid)))
    assert errors[1] < errors[0] / 4.0
    assert degrees[1] == pytest.approx(-1.0, abs=1e-2)
