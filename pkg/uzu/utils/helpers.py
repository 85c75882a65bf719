import logging
import os
import sys
from functools import wraps
from typing import Any, Dict, List, Optional

import click
import numpy as np
from rich import print
from rich.logging import RichHandler

from uzu.models.run_config import OUTPUT_LOCATION_KEYS, RunConfig
from uzu.utils.config import COMMAND_DEFAULTS, K_MAX, load_config_file
from uzu.utils.errors import InvalidInputError, UzuError

logger = logging.getLogger(__name__)


def setup_logging(verbosity: int) -> None:
    """0 -> WARNING, 1 -> INFO, 2 or more -> DEBUG, rendered by rich."""
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(message)s", handlers=[RichHandler(show_path=False)])
    logging.getLogger("uzu").setLevel(level)


def handle_errors(func):
    """
    Decorator for commands: report UzuError in red and exit with its code.

    Args:
        func: Click command callback

    Returns:
        Wrapped callback
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except UzuError as e:
            print(f"[red]❌ {type(e).__name__}: {e}[/red]")
            sys.exit(e.exit_code)

    return wrapper


def parse_float_list(text: Optional[str]) -> Optional[List[float]]:
    """'2,5,10' -> [2.0, 5.0, 10.0]; None passes through."""
    if text is None:
        return None
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise InvalidInputError(f"expected a comma-separated list of numbers, got {text!r}") from e
    if not values:
        raise InvalidInputError("list must not be empty")
    return values


def parse_k_range(text: Optional[str]) -> Optional[List[int]]:
    """'3', '2..6' or '2,3,4' -> list of modes within [0, K_MAX]."""
    if text is None:
        return None
    try:
        if ".." in text:
            lo, hi = (int(part) for part in text.split("..", 1))
            modes = list(range(lo, hi + 1))
        else:
            modes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise InvalidInputError(f"expected a mode, a range 'a..b' or a list 'a,b,c', got {text!r}") from e
    if not modes:
        raise InvalidInputError(f"empty mode range {text!r}")
    if any(k < 0 or k > K_MAX for k in modes):
        raise InvalidInputError(f"modes must lie in [0, {K_MAX}], got {text!r}")
    return modes


def build_run_config(command: str, config_path: Optional[str], **cli_values: Any) -> RunConfig:
    """
    Resolve a RunConfig: command-line values override the TOML file, which
    overrides the defaults. None and empty tuples count as not given.
    """
    data: Dict[str, Any] = dict(COMMAND_DEFAULTS.get(command, {}))
    data.update(load_config_file(config_path, command))
    for key, value in cli_values.items():
        if value is None or value == ():
            continue
        data[key] = list(value) if isinstance(value, tuple) else value
    data["command"] = command
    config = RunConfig.from_dict(data).validate()
    logger.debug(f"Resolved {command} config: {config}")
    return config


def record_with_config(record: Dict[str, Any], config: RunConfig) -> Dict[str, Any]:
    """Append the resolved configuration as config.<key> entries, output locations excluded."""
    result = dict(record)
    settings = config.to_dict()
    result.update({f"config.{key}": value for key, value in settings.items() if key not in OUTPUT_LOCATION_KEYS})
    return result


def write_output(out_dir: Optional[str], filename: str, text: str) -> Optional[str]:
    """Write text into out_dir/filename, creating the directory; no-op without out_dir."""
    if out_dir is None:
        return None
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, filename)
    with open(path, "w") as f:
        f.write(text)
    print(f"[blue]💾 Wrote [cyan]{path}[/cyan][/blue]")
    return path


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def common_options(func):
    """--config, --out, --format and --seed, shared by every subcommand."""
    options = [
        click.option("--config", "config_path", default=None, type=click.Path(), help="TOML configuration file."),
        click.option("-o", "--out", "out", default=None, help="Directory for output files."),
        click.option(
            "--format",
            "output_format",
            default=None,
            type=click.Choice(["table", "record"]),
            help="Console output: rich table or key = value record.",
        ),
        click.option("--seed", default=None, type=int, help="Seed for random test functions (default 42)."),
    ]
    for option in reversed(options):
        func = option(func)
    return func
