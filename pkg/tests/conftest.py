import random
from fractions import Fraction

import pytest

from paretocert import Economy, downward_closure, hull


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240611, help="seed for randomized instance drivers")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


@pytest.fixture(scope="session")
def U2():
    return hull([(0, 0), (1, 0), (1, 1), (0, 2)])


@pytest.fixture(scope="session")
def CONE5():
    return hull([(1, 0, 0), (-1, 0, 0), (0, -1, 0), (0, 1, 0), (0, 1, 1)])


@pytest.fixture(scope="session")
def ECON1():
    return Economy([[((2, 1), 0)], [((1, 2), 0)]], [(1, 0), (0, 1)])


@pytest.fixture(scope="session")
def U5():
    """Three-agent set where no partition certificate exists at (1/2, 1/2, -1/2)."""
    return downward_closure(hull([(0, 1, 0), (1, 0, -1)]))


@pytest.fixture(scope="session")
def u5():
    return (Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2))
