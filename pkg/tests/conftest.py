import numpy as np
import pytest

from exact_uncertainty.grids import GridSpec


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture
def grid():
    return GridSpec(1024, -20.0, 20.0)
