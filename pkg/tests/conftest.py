import numpy as np
import pytest

from epkit import DEFAULT_TOL


@pytest.fixture
def tol():
    return DEFAULT_TOL


@pytest.fixture
def rng():
    return np.random.default_rng(0xEC0FFEE)
