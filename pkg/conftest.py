import mpmath
import numpy as np
import pytest


@pytest.fixture
def precision():
    return 30


@pytest.fixture
def rng():
    return np.random.default_rng(20251019)


@pytest.fixture
def mp30():
    with mpmath.workdps(40):
        yield
