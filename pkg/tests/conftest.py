import numpy as np
import pytest

from bracketlab import Grid


@pytest.fixture(scope="session")
def grid8():
    return Grid.spatial(8)


@pytest.fixture(scope="session")
def grid16():
    return Grid.spatial(16)


@pytest.fixture(scope="session")
def phase_grid():
    # smallest phase grid the kinetic systems accept
    return Grid.phase(8, 6, 2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
