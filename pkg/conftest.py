import pytest

from jetcalc.tower import get_geometry


@pytest.fixture
def space_curve():
    """Complete intersection curves in P^3."""
    return get_geometry(3, 2)


@pytest.fixture
def surface():
    """Surfaces in P^3."""
    return get_geometry(3, 1)


@pytest.fixture
def plane_curve():
    return get_geometry(2, 1)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full acceptance grids, over a minute")
