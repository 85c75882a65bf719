import click
from rich import print

from uzu.core.counterexample import stitched_energy_sweep, stitched_grid
from uzu.models.grids import Grid2D
from uzu.utils.display import display_columns, display_record, format_columns, format_record
from uzu.utils.helpers import (
    build_run_config,
    common_options,
    handle_errors,
    parse_float_list,
    record_with_config,
    write_output,
)

STRIP_COLUMNS = ["L", "dirichlet", "helicity", "potential", "total", "degree"]


@click.command()
@click.option("-r", "--r", "r", default=None, type=float, help="Coupling r > 0.")
@click.option("--L", "L_text", default=None, help="Strip half-widths, comma-separated and increasing.")
@click.option("-p", "--p", "p", default=None, type=float, help="Potential exponent p >= 2 (default 4).")
@click.option("-X", "--half-width", "half_width", default=None, type=float, help="Grid half-width.")
@click.option("-n", "--n-per-side", "n_per_side", default=None, type=int, help="Grid nodes per side (default 801).")
@common_options
@handle_errors
def counterexample(config_path, out, output_format, seed, L_text, **options):
    """Energy of the strip maps n_L against L, with the fitted and analytic slopes."""
    config = build_run_config(
        "counterexample",
        config_path,
        out=out,
        output_format=output_format,
        seed=seed,
        L_values=parse_float_list(L_text),
        **options,
    )
    if config.half_width is not None:
        grid = Grid2D(config.half_width, config.n_per_side)
    else:
        grid = stitched_grid(config.r, max(config.L_values), config.n_per_side)

    print(f"[blue]📉 Strip maps at r={config.r:g} for L in {config.L_values}[/blue]")
    report = stitched_energy_sweep(config.r, config.L_values, grid, config.p, config.fd_order)

    display_columns("Strip energies", STRIP_COLUMNS, report.rows(), config.output_format)
    summary = report.summary()
    display_record("Linear fit", summary, config.output_format)
    write_output(config.out, "strip_energy.txt", format_columns(STRIP_COLUMNS, report.rows()))
    write_output(config.out, "strip_summary.txt", format_record(record_with_config(summary, config)))
    print(f"[green]✅ slope {report.slope:.6g} (analytic {report.analytic_slope:.6g})[/green]")
