"""
Default settings and configuration file handling.
Defaults are plain module constants; a TOML file can override any of them.
"""

import logging
import os
from typing import Any, Dict, Optional

import toml

from uzu.utils.errors import InvalidInputError

logger = logging.getLogger(__name__)

# Reproducibility
DEFAULT_SEED = 42

# Cartesian grids: half-width is DEFAULT_WIDTH_FACTOR times the field scale
DEFAULT_WIDTH_FACTOR = 40.0
DEFAULT_N_PER_SIDE = 1001

# Finite-difference order used by energies and quadratic forms
DEFAULT_FD_ORDER = 4

# Radial grids
DEFAULT_RHO_MIN = 1e-4
DEFAULT_RHO_MAX = 1e4
DEFAULT_N_RADIAL = 1200
DEFAULT_SPACING_MODE = "geometric"

# Eigenproblem mass weight: "logarithmic" (dρ/ρ) or "radial" (ρ dρ)
DEFAULT_MASS = "logarithmic"

# Highest Fourier mode handled by the sweeps
K_MAX = 8

# Instability search sweeps
DEFAULT_A_VALUES = (1e1, 1e2, 1e3, 1e4)
DEFAULT_LAMBDA_VALUES = (1.0, 1e-1, 1e-2, 1e-3)
DEFAULT_HARDY_A_VALUES = (1e2, 1e3, 1e4)

# Nodes per e-fold of a Hardy function grid
HARDY_NODES_PER_EFOLD = 2000

# Threshold bisection
DEFAULT_R_LO = 0.1
DEFAULT_R_HI = 10.0
DEFAULT_R_TOL = 1e-3

# Counterexample sweep
DEFAULT_L_VALUES = (2.0, 5.0, 10.0)
STRIP_WIDTH_FACTOR = 40.0
STRIP_CAP_FACTOR = 20.0
DEFAULT_STRIP_N_PER_SIDE = 801

# Verification checks run on a square of VERIFY_WIDTH_FACTOR field scales
VERIFY_WIDTH_FACTOR = 10.0
VERIFY_N_PER_SIDE = 401

# Bound on ‖Kv - λMv‖ for a unit eigenvector
EIG_RESIDUAL_TOL = 1e-10

# Relative margin below the returned eigenvalue that the Sturm count must leave empty
EIG_RELATIVE_TOL = 1e-8

# Inverse-iteration steps refining the eigenvector on the unscaled pencil
INVERSE_ITERATION_STEPS = 3

# Output
OUTPUT_FORMATS = ("table", "record")

# Per-command defaults that differ from the RunConfig field defaults
COMMAND_DEFAULTS = {
    "counterexample": {"n_per_side": DEFAULT_STRIP_N_PER_SIDE},
    "hardy": {"a_values": list(DEFAULT_HARDY_A_VALUES)},
}


def load_config_file(path: Optional[str], command: Optional[str] = None) -> Dict[str, Any]:
    """
    Load settings from a TOML file.

    Args:
        path: Path to the TOML file, or None for no file
        command: Subcommand name; a table with that name overrides top-level keys

    Returns:
        Flat dictionary of settings found in the file
    """
    if path is None:
        return {}
    if not os.path.exists(path):
        raise InvalidInputError(f"Config file not found: {path}")

    try:
        data = toml.load(path)
    except toml.TomlDecodeError as e:
        raise InvalidInputError(f"Invalid TOML in {path}: {e}") from e

    settings = {key: value for key, value in data.items() if not isinstance(value, dict)}
    if command is not None:
        section = data.get(command, {})
        if isinstance(section, dict):
            settings.update(section)

    logger.debug(f"Loaded {len(settings)} settings from {path}")
    return settings
