import click
from rich import print

from uzu.core.instability import hardy_ratio, make_hardy_function
from uzu.utils.display import display_columns, format_columns
from uzu.utils.errors import CheckFailure
from uzu.utils.helpers import build_run_config, common_options, handle_errors, parse_float_list, write_output

HARDY_COLUMNS = ["A", "ratio", "slack", "max_dchi_times_A"]

# Allowed excess of a measured ratio over the sharp constant ¼
HARDY_TOL = 1e-3


@click.command()
@click.option("--A", "a_text", default=None, help="Hardy scales, comma-separated (default 1e2,1e3,1e4).")
@common_options
@handle_errors
def hardy(config_path, out, output_format, seed, a_text):
    """Hardy ratio of the cutoff family ξ_A = ρ²χ_A."""
    config = build_run_config(
        "hardy", config_path, out=out, output_format=output_format, seed=seed, a_values=parse_float_list(a_text)
    )
    rows = []
    for A in config.a_values:
        function = make_hardy_function(A)
        ratio = hardy_ratio(function.radial, config.fd_order)
        rows.append([A, ratio, 1.0 / ratio - 4.0, function.audit()["max_dchi_times_A"]])
    display_columns("Hardy ratios", HARDY_COLUMNS, rows, config.output_format)
    write_output(config.out, "hardy.txt", format_columns(HARDY_COLUMNS, rows))

    worst = max(row[1] for row in rows)
    if worst > 0.25 + HARDY_TOL:
        raise CheckFailure(f"Hardy ratio {worst:.6f} exceeds 1/4")
    print(f"[green]✅ All ratios below 1/4 (largest {worst:.6f})[/green]")
