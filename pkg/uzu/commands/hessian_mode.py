import click
import numpy as np
from rich import print

from uzu.core.hessian import ModeForm, mode_report
from uzu.core.numerics import log_bump, random_log_bumps
from uzu.core.skyrmion import PROFILE
from uzu.models.fields import RadialFunction
from uzu.models.grids import SPACING_MODES, RadialGrid
from uzu.models.run_config import MASS_WEIGHTS, TEST_PROFILES
from uzu.utils.display import display_record, format_record
from uzu.utils.helpers import build_run_config, common_options, handle_errors, make_rng, record_with_config, write_output


def sample_pair(profile: str, grid: RadialGrid, seed: int):
    """(α, β) for a named test profile."""
    if profile == "bump":
        alpha = log_bump(grid, 0.5, 4.0)
        return RadialFunction(grid, alpha), RadialFunction(grid, alpha)
    if profile == "kernel":
        rho = np.asarray(grid.nodes)
        lo, hi = max(grid.rho_min * 10.0, 1e-2), min(grid.rho_max / 10.0, 1e2)
        alpha = PROFILE.sin_theta(rho) / rho * log_bump(grid, lo, hi)
        return RadialFunction(grid, alpha), RadialFunction(grid, alpha)
    rng = make_rng(seed)
    return RadialFunction(grid, random_log_bumps(grid, rng)), RadialFunction(grid, random_log_bumps(grid, rng))


@click.command("hessian-mode")
@click.option("-k", "--k", "k", default=None, type=int, help="Fourier mode k (default 3).")
@click.option("-r", "--r", "r", default=None, type=float, help="Coupling r >= 0.")
@click.option("--profile", default=None, type=click.Choice(TEST_PROFILES), help="Test pair (α, β).")
@click.option("--eig/--no-eig", "with_eig", default=None, help="Also solve for the lowest eigenvalue.")
@click.option("--full/--symmetric", "full", default=None, help="Two-component eigenproblem instead of α = β.")
@click.option("--mass", default=None, type=click.Choice(MASS_WEIGHTS), help="Eigenproblem mass weight.")
@click.option("--rho-min", "rho_min", default=None, type=float, help="Radial grid start.")
@click.option("--rho-max", "rho_max", default=None, type=float, help="Radial grid end.")
@click.option("--n-radial", "n_radial", default=None, type=int, help="Radial grid nodes.")
@click.option("--spacing", "spacing_mode", default=None, type=click.Choice(SPACING_MODES), help="Radial node spacing.")
@common_options
@handle_errors
def hessian_mode(config_path, out, output_format, seed, full, **options):
    """Evaluate the mode-k Hessian form on a test pair."""
    symmetric = None if full is None else not full
    config = build_run_config(
        "hessian-mode", config_path, out=out, output_format=output_format, seed=seed, symmetric=symmetric, **options
    )
    grid = RadialGrid(config.rho_min, config.rho_max, config.n_radial, config.spacing_mode)
    alpha, beta = sample_pair(config.profile, grid, config.seed)

    print(f"[blue]🌀 Mode k={config.k}, r={config.r:g}, profile [cyan]{config.profile}[/cyan][/blue]")
    report = mode_report(
        ModeForm(config.k, config.r),
        alpha,
        beta,
        with_eig=config.with_eig,
        symmetric=config.symmetric,
        mass=config.mass,
        eig_grid=grid,
    )
    record = report.to_dict()
    display_record("Mode form", record, config.output_format)
    write_output(config.out, "mode.txt", format_record(record_with_config(record, config)))
    if report.min_eig is not None and report.min_eig < 0:
        print(f"[yellow]⚠️ Negative eigenvalue {report.min_eig:.4e}: mode {config.k} is unstable at r={config.r:g}[/yellow]")
