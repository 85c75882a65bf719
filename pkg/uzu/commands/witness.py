import click
from rich import print

from uzu.core.instability import find_negative_direction
from uzu.utils.display import display_record, format_columns, format_record
from uzu.utils.helpers import (
    build_run_config,
    common_options,
    handle_errors,
    parse_float_list,
    record_with_config,
    write_output,
)


@click.command("instability-witness")
@click.option("-k", "--k", "k", default=None, type=int, help="Fourier mode k >= 2 (default 3).")
@click.option("-r", "--r", "r", default=None, type=float, help="Coupling r > 0.")
@click.option("--A", "a_text", default=None, help="Hardy scales, comma-separated.")
@click.option("--lambda", "lambda_text", default=None, help="Dilations, comma-separated.")
@common_options
@handle_errors
def instability_witness(config_path, out, output_format, seed, a_text, lambda_text, **options):
    """Search for a certified negative direction of the mode-k form."""
    config = build_run_config(
        "instability-witness",
        config_path,
        out=out,
        output_format=output_format,
        seed=seed,
        a_values=parse_float_list(a_text),
        lambda_values=parse_float_list(lambda_text),
        **options,
    )
    print(f"[blue]🔎 Searching mode {config.k} at r={config.r:g} over {len(config.a_values)}x{len(config.lambda_values)} points[/blue]")
    search = find_negative_direction(config.k, config.r, config.a_values, config.lambda_values, config.fd_order)

    record = search.to_dict()
    display_record("Instability witness", record, config.output_format)
    write_output(config.out, "witness.txt", format_record(record_with_config(record, config)))
    if search.found:
        write_output(config.out, "xi.txt", format_columns(["rho", "xi"], search.witness.xi_table().tolist()))
        print(f"[green]✅ Certified negative value {search.witness.certified_value:.6e}[/green]")
    else:
        print(f"[yellow]⚠️ No negative direction found; best value {search.best_value:.6e}[/yellow]")
