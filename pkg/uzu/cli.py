import sys

import click

from uzu.commands import counterexample, energy, hardy, hessian_mode, threshold, verify, witness
from uzu.utils.errors import EXIT_INVALID_INPUT
from uzu.utils.helpers import setup_logging


class UzuGroup(click.Group):
    """Click group whose usage errors exit with status 1 instead of 2."""

    def main(self, *args, **kwargs):
        kwargs["standalone_mode"] = False
        try:
            return super().main(*args, **kwargs)
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_INVALID_INPUT)
        except click.ClickException as e:
            e.show()
            sys.exit(EXIT_INVALID_INPUT)


@click.group(cls=UzuGroup)
@click.option("-v", "--verbose", count=True, help="Increase log verbosity (-v info, -vv debug).")
@click.pass_context
def cli(ctx, verbose):
    """
    Uzu: numerical experiments on chiral skyrmions, their Hessian and the r = 1 threshold.
    """
    ctx.ensure_object(dict)
    setup_logging(verbose)


cli.add_command(energy.energy)
cli.add_command(verify.verify)
cli.add_command(hessian_mode.hessian_mode)
cli.add_command(threshold.threshold)
cli.add_command(witness.instability_witness)
cli.add_command(counterexample.counterexample)
cli.add_command(hardy.hardy)


if __name__ == "__main__":
    cli()
