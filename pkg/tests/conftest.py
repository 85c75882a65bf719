import numpy as np
import pytest

from uzu.models.grids import Grid2D, RadialGrid


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def radial_grid():
    """Geometric grid on [1e-2, 1e2] fine enough for 4th-order identities."""
    return RadialGrid(1e-2, 1e2, 4001, "geometric")


@pytest.fixture
def small_grid():
    return Grid2D(10.0, 201)


def read_record(path):
    """Parse a `key = value` file into a dict of strings."""
    record = {}
    with open(path) as f:
        for line in f:
            key, _, value = line.rstrip("\n").partition(" = ")
            record[key] = value
    return record
