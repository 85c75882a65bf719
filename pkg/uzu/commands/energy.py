import click
from rich import print

from uzu.core import field_io
from uzu.core.counterexample import stitched_grid
from uzu.core.energy import total_energy
from uzu.core.skyrmion import constant_e3, sample_field, skyrmion_at_scale, stitched_map
from uzu.models.grids import Grid2D
from uzu.models.run_config import FIELD_KINDS
from uzu.utils.config import DEFAULT_WIDTH_FACTOR
from uzu.utils.display import display_record, format_record
from uzu.utils.helpers import build_run_config, common_options, handle_errors, record_with_config, write_output


def load_field(config):
    """Sample or read the field a config names."""
    if config.field_kind == "file":
        return field_io.read_field(config.input_path)
    if config.field_kind == "stitched":
        if config.half_width is not None:
            grid = Grid2D(config.half_width, config.n_per_side)
        else:
            grid = stitched_grid(config.r, config.L, config.n_per_side)
        return sample_field(lambda x: stitched_map(x, config.r, config.L), grid)

    scale = config.scale or 2.0 * config.r
    grid = Grid2D(config.half_width or DEFAULT_WIDTH_FACTOR * scale, config.n_per_side)
    if config.field_kind == "constant-e3":
        return sample_field(constant_e3, grid)
    return sample_field(lambda x: skyrmion_at_scale(x, scale), grid)


@click.command()
@click.option("-f", "--field", "field_kind", default=None, type=click.Choice(FIELD_KINDS), help="Field to evaluate.")
@click.option("-r", "--r", "r", default=None, type=float, help="Dzyaloshinskii–Moriya coupling r > 0.")
@click.option("-p", "--p", "p", default=None, type=float, help="Potential exponent p >= 2 (default 4).")
@click.option("--scale", default=None, type=float, help="Skyrmion scale (default 2r).")
@click.option("--L", "L", default=None, type=float, help="Strip half-width of the stitched field.")
@click.option("-X", "--half-width", "half_width", default=None, type=float, help="Grid half-width.")
@click.option("-n", "--n-per-side", "n_per_side", default=None, type=int, help="Grid nodes per side.")
@click.option("--order", "fd_order", default=None, type=click.Choice(["2", "4"]), help="Finite-difference order.")
@click.option("--input", "input_path", default=None, type=click.Path(), help="Field file for --field file.")
@click.option("--save-field", "save_field", default=None, type=click.Path(), help="Write the sampled field to this file.")
@common_options
@handle_errors
def energy(config_path, out, output_format, seed, **options):
    """Evaluate the energy, its parts and the degree of a field."""
    if options.get("fd_order") is not None:
        options["fd_order"] = int(options["fd_order"])
    config = build_run_config("energy", config_path, out=out, output_format=output_format, seed=seed, **options)

    print(f"[blue]🧲 Evaluating [cyan]{config.field_kind}[/cyan] field at r={config.r:g}[/blue]")
    field = load_field(config)
    breakdown = total_energy(field, config.r, config.p, config.fd_order)
    if config.save_field:
        field_io.write_field(config.save_field, field)
        print(f"[blue]💾 Saved field to [cyan]{config.save_field}[/cyan][/blue]")

    record = breakdown.to_dict()
    record["corrected_total"] = breakdown.corrected_total
    display_record("Energy", record, config.output_format)
    write_output(config.out, "energy.txt", format_record(record_with_config(record, config)))
    print(f"[green]✅ E = {breakdown.total:.8g}, Q = {breakdown.degree:.6f}[/green]")
