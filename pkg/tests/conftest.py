from fractions import Fraction as F

import pytest

from plconj.plmap import PLMap

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def x0():
    return PLMap([(0, 0), (F(1, 2), F(1, 4)), (F(3, 4), F(1, 2)), (1, 1)])


@pytest.fixture
def x1():
    return PLMap([(0, 0), (F(1, 2), F(1, 2)), (F(3, 4), F(5, 8)), (F(7, 8), F(3, 4)), (1, 1)])


@pytest.fixture
def crossing_map():
    # below the diagonal on (0, 1/3), above on (1/3, 1); the only interior
    # fixed point is the non-dyadic 1/3 (slope 4 there: 4*(1/3) - 1 = 1/3)
    return PLMap(
        [
            (0, 0),
            (F(1, 4), F(1, 8)),
            (F(5, 16), F(1, 4)),
            (F(3, 8), F(1, 2)),
            (F(1, 2), F(3, 4)),
            (1, 1),
        ]
    )
