"""
Shared fixtures.

The computational modules read their caps from the process-wide
``LIMITS`` registry; every test starts from the default caps.
"""

import numpy as np
import pytest

from obsaudit.config import RunConfig, configure_limits


@pytest.fixture(autouse=True)
def default_limits():
    """Reset the caps before and after each test."""
    configure_limits(RunConfig())
    yield
    configure_limits(RunConfig())


@pytest.fixture
def rng():
    """A seeded generator, so random inputs are the same on every run."""
    return np.random.default_rng(20240611)
