import click
from rich import print

from uzu.core.instability import threshold_table
from uzu.models.grids import RadialGrid
from uzu.models.run_config import MASS_WEIGHTS
from uzu.utils.display import display_columns, format_columns
from uzu.utils.errors import NoSignChangeError
from uzu.utils.helpers import build_run_config, common_options, handle_errors, parse_k_range, write_output

THRESHOLD_COLUMNS = ["k", "r_c", "r_lo", "r_hi", "eig_lo", "eig_hi", "symmetric", "steps"]


@click.command()
@click.option("-k", "--k", "k_text", default=None, help="Modes: '3', '2..6' or '2,3,4' (default 3).")
@click.option("--r-lo", "r_lo", default=None, type=float, help="Lower end of the bracket (default 0.1).")
@click.option("--r-hi", "r_hi", default=None, type=float, help="Upper end of the bracket (default 10).")
@click.option("--tol", "r_tol", default=None, type=float, help="Bracket width to stop at.")
@click.option("--full/--symmetric", "full", default=None, help="Two-component eigenproblem instead of α = β.")
@click.option("--mass", default=None, type=click.Choice(MASS_WEIGHTS), help="Eigenproblem mass weight.")
@click.option("--n-radial", "n_radial", default=None, type=int, help="Radial grid nodes.")
@common_options
@handle_errors
def threshold(config_path, out, output_format, seed, k_text, full, **options):
    """Bisect for the coupling where the lowest mode-k eigenvalue changes sign."""
    symmetric = None if full is None else not full
    config = build_run_config(
        "threshold",
        config_path,
        out=out,
        output_format=output_format,
        seed=seed,
        symmetric=symmetric,
        k_values=parse_k_range(k_text),
        **options,
    )
    k_values = config.k_values or [config.k]
    grid = RadialGrid(config.rho_min, config.rho_max, config.n_radial, config.spacing_mode)

    print(f"[blue]📈 Threshold scan for modes {k_values} on [{config.r_lo:g}, {config.r_hi:g}][/blue]")
    table = threshold_table(k_values, config.r_lo, config.r_hi, config.r_tol, grid, config.symmetric, config.mass)

    rows = []
    for k, estimate in table:
        if estimate is None:
            print(f"[yellow]⚠️ Mode {k}: no sign change on [{config.r_lo:g}, {config.r_hi:g}][/yellow]")
            rows.append([k, None, config.r_lo, config.r_hi, None, None, config.symmetric, 0])
        else:
            rows.append([estimate.to_dict()[name] for name in THRESHOLD_COLUMNS])
    display_columns("Thresholds", THRESHOLD_COLUMNS, rows, config.output_format)
    write_output(config.out, "threshold.txt", format_columns(THRESHOLD_COLUMNS, rows))

    if all(estimate is None for _, estimate in table):
        raise NoSignChangeError("no requested mode changes sign in the bracket")
