import numpy as np
import pytest

from farpoint import Coordinates, Euclidean, FiniteSet, GridFunction

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def plane():
    return Euclidean(2)


@pytest.fixture
def triangle():
    return FiniteSet([Coordinates(p) for p in [(0, 0), (1, 0), (0, 1)]])


@pytest.fixture
def pair():
    """C = {(1, 0), (-1, 0)}: the point (0, 1) has two farthest points."""
    return FiniteSet([Coordinates((1, 0)), Coordinates((-1, 0))])


def random_grid_function(rng, n=11, center=0.0, radius=1.0):
    return GridFunction(np.linspace(0, 1, n), center + rng.uniform(-radius, radius, n))
