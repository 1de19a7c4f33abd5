"""
Pytest configuration and shared fixtures for the shuffle engine tests.
"""
import os
import sys
import pytest
from fractions import Fraction
from loguru import logger

# Add the backend and src directories to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from src.combinatorics.partitions import Partition
from src.shuffle.params import ShuffleParams


@pytest.fixture(scope="session", autouse=True)
def quiet_logs():
    """Keep decorator chatter out of the test output."""
    logger.remove()
    logger.add(sys.stderr, level="WARNING")
    yield


@pytest.fixture
def balanced_half():
    """Balanced deck of 2 + 2 cards with b = 1/2."""
    return ShuffleParams.balanced(2, Fraction(1, 2))


@pytest.fixture
def params_small():
    """Balanced deck of 3 + 3 cards with b = 1/2."""
    return ShuffleParams.balanced(3, Fraction(1, 2))


@pytest.fixture
def two_hive_triple():
    """The (4,3,2), (3,2,1), (2,1) triple with two LR tableaux and two hives."""
    return Partition.of(4, 3, 2), Partition.of(3, 2, 1), Partition.of(2, 1)


# Parametrized fixture for the decks used by the exact oracles
@pytest.fixture(params=[
    (1, "1"),
    (1, "1/2"),
    (2, "1"),
    (2, "1/2"),
    (2, "1/4"),
    (3, "1"),
    (3, "1/2"),
    (3, "1/4"),
])
def oracle_params(request):
    """Balanced decks with N <= 6, small enough for the explicit matrix."""
    n, b = request.param
    return ShuffleParams.balanced(n, b)


# Markers for different test types
def pytest_configure(config):
    """Configure pytest markers."""
    config.addinivalue_line("markers", "unit: mark test as unit test")
    config.addinivalue_line("markers", "integration: mark test as crossing several modules")
    config.addinivalue_line("markers", "slow: mark test as slow running")
    config.addinivalue_line("markers", "montecarlo: mark test as sampling random walks")
    config.addinivalue_line("markers", "exhaustive: mark test as scanning every small case")


# Command line options
def pytest_addoption(parser):
    """Add custom command line options."""
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="Also run slow and Monte Carlo tests"
    )
    parser.addoption(
        "--fast-only",
        action="store_true",
        default=False,
        help="Skip exhaustive scans as well"
    )


# Skip slow tests unless asked for
def pytest_collection_modifyitems(config, items):
    """Modify test collection based on command line options."""
    run_slow = config.getoption("--run-slow")
    fast_only = config.getoption("--fast-only")

    for item in items:
        if not run_slow and ("slow" in item.keywords or "montecarlo" in item.keywords):
            item.add_marker(pytest.mark.skip(reason="Needs --run-slow"))
        if fast_only and "exhaustive" in item.keywords:
            item.add_marker(pytest.mark.skip(reason="Fast only mode"))
