import numpy as np
import pytest
from scipy import integrate

from uzu.core import counterexample
from uzu.core.counterexample import (
    analytic_slope,
    closed_form_slope,
    stitched_energy_sweep,
    stitched_grid,
    strip_density,
    strip_density_lhs,
    strip_integral,
)
from uzu.models.grids import Grid2D
from uzu.utils.errors import InvalidInputError


def test_strip_density_examples():
    assert strip_density(0.0, 2.0) == pytest.approx(-6.0)
    assert strip_density(0.5, 2.0) == pytest.approx(-1.5)
    np.testing.assert_array_equal(strip_density(np.linspace(-5, 5, 11), 1.0), 0.0)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0, 3.7])
def test_strip_density_from_derivatives(r):
    x1 = np.linspace(-20.0, 20.0, 1000)
    np.testing.assert_allclose(strip_density_lhs(x1, r), strip_density(x1, r), atol=1e-10)


@pytest.mark.parametrize("r", [0.3, 1.0, 2.0, 5.0])
def test_slope_quadrature_matches_closed_form(r):
    assert analytic_slope(r) == pytest.approx(closed_form_slope(r), rel=1e-8, abs=1e-10)


def test_slope_at_r_two():
    assert closed_form_slope(2.0) == pytest.approx(-3.0 * np.pi)


def test_strip_integral():
    assert strip_integral(5.0, 2.0) == pytest.approx(5.0 * closed_form_slope(2.0))
    assert strip_integral(0.0, 2.0) == 0.0
    truncated, _ = integrate.quad(lambda x: float(strip_density(x, 2.0)), -3.0, 3.0)
    assert strip_integral(1.5, 2.0, X=3.0) == pytest.approx(3.0 * truncated, rel=1e-10)


@pytest.mark.parametrize("L, r", [(-1.0, 2.0), (1.0, 0.0), (1.0, -2.0)])
def test_strip_integral_rejects_bad_inputs(L, r):
    with pytest.raises(InvalidInputError):
        strip_integral(L, r)


def test_stitched_grid_puts_strip_edges_on_nodes():
    grid = stitched_grid(2.0, 10.0)
    assert grid.half_width == pytest.approx(20.0)
    for L in (2.0, 5.0, 10.0):
        assert (L + grid.half_width) / grid.spacing == pytest.approx(round((L + grid.half_width) / grid.spacing))


def test_energy_decreases_linearly_for_large_coupling():
    report = stitched_energy_sweep(2.0, [2.0, 5.0, 10.0])
    assert report.slope == pytest.approx(-3.0 * np.pi, rel=3e-2)
    assert report.analytic_slope == pytest.approx(-3.0 * np.pi, rel=1e-8)
    assert report.residual < 1e-2
    assert abs(report.quadratic_coefficient) < 1e-2 * abs(report.slope)
    for breakdown in report.energies:
        assert breakdown.degree == pytest.approx(-1.0, abs=0.05)
    assert report.energies[-1].total < report.energies[0].total


def test_energy_gap_is_the_strip_integral():
    r = 2.0
    grid = stitched_grid(r, 5.0)
    report = stitched_energy_sweep(r, [0.0, 5.0], grid=grid)
    gap = report.energies[1].total - report.energies[0].total
    assert gap == pytest.approx(strip_integral(5.0, r, grid.half_width), rel=2e-2)
    assert report.quadratic_coefficient is None


def test_energy_grows_for_small_coupling():
    report = stitched_energy_sweep(0.5, [2.0, 5.0])
    assert report.slope > 0
    assert report.analytic_slope == pytest.approx(3.0 * np.pi, rel=1e-8)


def test_sweep_rejects_bad_inputs():
    with pytest.raises(InvalidInputError):
        stitched_energy_sweep(2.0, [10.0], grid=Grid2D(15.0, 301))
    with pytest.raises(InvalidInputError):
        stitched_energy_sweep(2.0, [])
    with pytest.raises(InvalidInputError):
        stitched_energy_sweep(2.0, [-1.0, 2.0])
    with pytest.raises(InvalidInputError):
        stitched_energy_sweep(2.0, [5.0, 2.0], grid=Grid2D(20.0, 201))


def test_energy_flat_at_unit_coupling():
    report = stitched_energy_sweep(1.0, [2.0, 5.0])
    assert abs(report.slope) < 1e-3
    assert report.analytic_slope == pytest.approx(0.0, abs=1e-10)


@pytest.mark.parametrize("L_values", [[5.0, 2.0], [2.0, 2.0], [2.0, 10.0, 5.0]])
def test_sweep_rejects_unordered_widths_before_any_energy(monkeypatch, L_values):
    def fail(*args, **kwargs):
        raise AssertionError("energy evaluated for an invalid sweep")

    monkeypatch.setattr(counterexample, "total_energy", fail)
    with pytest.raises(InvalidInputError, match="strictly increasing"):
        stitched_energy_sweep(2.0, L_values)
