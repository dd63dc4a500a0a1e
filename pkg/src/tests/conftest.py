"""
Shared fixtures for the cascade-zeno test suite.
"""

import numpy as np
import pytest

from src.discretize import build_discrete
from src.model import flat_reference_spec


@pytest.fixture
def flat_spec():
    """Flat bands, halfwidth 20, 400 modes each, gamma2 = 1, N = 0."""
    return flat_reference_spec(halfwidth=20.0, count=400)


@pytest.fixture
def zeno_spec():
    """Flat bands with v10 = 0.5, so N = 0.25."""
    return flat_reference_spec(halfwidth=100.0, count=400, v10=0.5)


@pytest.fixture
def small_model():
    """Flat model with 7 modes in each band and a nonzero 1 <-> 0 coupling."""
    return build_discrete(flat_reference_spec(halfwidth=5.0, count=7, v10=0.8))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

