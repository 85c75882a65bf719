import click
from rich import print

from uzu.checks import get_available_checks, get_check
from uzu.utils.display import display_columns, format_columns
from uzu.utils.errors import CheckFailure, InvalidInputError
from uzu.utils.helpers import build_run_config, common_options, handle_errors, write_output

CHECK_COLUMNS = ["name", "measured", "tolerance", "passed", "expected"]


@click.command()
@click.option("-c", "--check", "checks", multiple=True, help="Check to run (repeatable; default all).")
@click.option("--expect-fail", "expect_fail", multiple=True, help="Check expected to fail (repeatable).")
@click.option("-r", "--r", "r", default=None, type=float, help="Coupling r (default 1).")
@click.option("--scale", default=None, type=float, help="Skyrmion scale for the Euler–Lagrange check (default 2r).")
@click.option("-X", "--half-width", "half_width", default=None, type=float, help="Grid half-width of the Cartesian checks.")
@common_options
@handle_errors
def verify(config_path, out, output_format, seed, **options):
    """Run the identity checks and report measured errors against tolerances."""
    config = build_run_config("verify", config_path, out=out, output_format=output_format, seed=seed, **options)

    available = get_available_checks()
    names = config.checks or list(available)
    unknown = [name for name in names + config.expect_fail if get_check(name) is None]
    if unknown:
        raise InvalidInputError(f"Unknown checks: {', '.join(unknown)} (available: {', '.join(available)})")

    print(f"[blue]🔍 Running [yellow]{len(names)}[/yellow] checks at r={config.r:g}[/blue]")
    results = []
    for name in names:
        check = available[name]()
        print(f"[blue]  • {name}: {check.DESCRIPTION}[/blue]")
        results.append(check.run(config, expected=name not in config.expect_fail))

    rows = [[res.name, res.measured, res.tolerance, res.passed, res.expected] for res in results]
    display_columns("Checks", CHECK_COLUMNS, rows, config.output_format)
    for res in results:
        print(f"[blue]  {res.name}: {res.detail}[/blue]")
    write_output(config.out, "checks.txt", format_columns(CHECK_COLUMNS, rows))

    surprises = [res.name for res in results if not res.as_expected]
    if surprises:
        raise CheckFailure(f"checks not meeting expectations: {', '.join(surprises)}")
    print("[green]✅ All checks met expectations[/green]")
