"""
Plain-text field files: a header line `x1 x2 n1 n2 n3` followed by one
whitespace-separated row per node of a square tensor grid.
"""

import logging
import os

import numpy as np

from uzu.models.fields import MagnetizationField
from uzu.models.grids import Grid2D
from uzu.utils.errors import InvalidInputError

logger = logging.getLogger(__name__)

FIELD_HEADER = "x1 x2 n1 n2 n3"

# Relative tolerance on node positions when recognizing the grid
COORD_TOL = 1e-9


def write_field(path: str, field: MagnetizationField) -> None:
    """Write a sampled field, one row per node, x1 varying slowest."""
    points = field.grid.points().reshape(-1, 2)
    rows = np.hstack([points, np.asarray(field.values).reshape(-1, 3)])
    np.savetxt(path, rows, fmt="%.17g", header=FIELD_HEADER, comments="")
    logger.debug(f"Wrote {len(rows)} nodes to {path}")


def read_field(path: str) -> MagnetizationField:
    """
    Read a field file back onto its Grid2D.

    Rows may come in any order; they must cover a square, uniformly spaced
    tensor grid symmetric about the origin, and every n must be a unit vector.
    """
    if not os.path.exists(path):
        raise InvalidInputError(f"Field file not found: {path}")

    with open(path) as f:
        header = f.readline().split()
    if header != FIELD_HEADER.split():
        raise InvalidInputError(f"{path}: expected header '{FIELD_HEADER}', got '{' '.join(header)}'")

    try:
        rows = np.loadtxt(path, skiprows=1, ndmin=2)
    except ValueError as e:
        raise InvalidInputError(f"{path}: unreadable rows: {e}") from e
    if rows.shape[1] != 5:
        raise InvalidInputError(f"{path}: expected 5 columns, got {rows.shape[1]}")

    n = int(round(np.sqrt(rows.shape[0])))
    if n * n != rows.shape[0] or n < 3:
        raise InvalidInputError(f"{path}: {rows.shape[0]} rows do not form a square grid")

    order = np.lexsort((rows[:, 1], rows[:, 0]))
    rows = rows[order]
    half_width = float(np.max(np.abs(rows[:, :2])))
    grid = Grid2D(half_width, n)
    expected = grid.points().reshape(-1, 2)
    if np.max(np.abs(rows[:, :2] - expected)) > COORD_TOL * max(half_width, 1.0):
        raise InvalidInputError(f"{path}: nodes do not form a uniform grid symmetric about the origin")

    logger.info(f"Read {n}x{n} field from {path}")
    return MagnetizationField(grid, rows[:, 2:].reshape(n, n, 3))
