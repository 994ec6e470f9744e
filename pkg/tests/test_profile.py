from fractions import Fraction

import pytest

from endpoint_lab.errors import FunctionDomainError
from endpoint_lab.interval import SubInterval
from endpoint_lab.numeric import QuadraticSurd
from endpoint_lab.profile import MonotoneProfile, PowerMap, level_left_edge

F = Fraction


def test_power_map_normalizes_constants():
    assert PowerMap(F(1), F(2), 0) == PowerMap.constant(F(3))
    assert PowerMap(F(1), F(0), 5).exponent == 0


def test_power_map_values():
    assert PowerMap.linear(F(1), F(-1))(F(1, 4)) == F(3, 4)
    assert PowerMap(F(0), F(1), -1)(F(2)) == F(1, 2)
    assert PowerMap.linear(F(1), F(2)).negate()(F(1)) == -3


def test_power_map_solve():
    square = PowerMap(F(0), F(1), 2)
    assert square.solve(F(1, 4), F(0), F(1)) == F(1, 2)
    assert square.solve(F(1, 4), F(-1), F(0)) == F(-1, 2)
    assert PowerMap.linear(F(1), F(-1)).solve(F(1, 3), F(0), F(1)) == F(2, 3)


def test_power_map_solve_in_quadratic_field():
    assert PowerMap(F(0), F(1), 2).solve(F(2), F(0), F(2)) == QuadraticSurd(F(0), F(1))
    assert PowerMap(F(2), F(-1), 2).solve(F(3, 2), F(0), F(1)) == QuadraticSurd(F(0), F(1, 2))
    assert PowerMap(F(0), F(1), 2).solve(F(8), F(-3), F(0)) == QuadraticSurd(F(0), F(-2))
    assert PowerMap(F(0), F(1), 4).solve(F(4), F(0), F(2)) == QuadraticSurd(F(0), F(1))


def test_power_map_solve_failures():
    with pytest.raises(FunctionDomainError):
        PowerMap.constant(F(1)).solve(F(1), F(0), F(1))

    with pytest.raises(FunctionDomainError):
        PowerMap(F(0), F(1), 2).solve(F(3), F(0), F(2))

    with pytest.raises(FunctionDomainError):
        PowerMap(F(3), F(-1), 3).solve(F(5, 2), F(0), F(1))

    with pytest.raises(FunctionDomainError):
        PowerMap(F(0), F(1), 2).solve(F(2), F(0), F(1))


def test_profile_evaluation():
    profile = MonotoneProfile(
        (F(0), F(1, 2), F(1)),
        (F(1), F(1, 2), F(0)),
        (PowerMap.constant(F(1)), PowerMap.linear(F(1), F(-1))),
    )
    assert profile(F(1, 4)) == 1
    assert profile(F(1, 2)) == F(1, 2)
    assert profile(F(3, 4)) == F(1, 4)

    with pytest.raises(FunctionDomainError):
        profile(F(2))


def test_profile_compress():
    profile = MonotoneProfile(
        (F(0), F(1, 2), F(1)),
        (F(1), F(1), F(1)),
        (PowerMap.constant(F(1)), PowerMap.constant(F(1))),
    )
    assert profile.compress() == MonotoneProfile.constant(F(0), F(1), F(1))


@pytest.fixture
def staircase():
    # 1 on [0, 1/2), 1/2 on [1/2, 3/4], 0 on (3/4, 1]
    return MonotoneProfile(
        (F(0), F(1, 2), F(3, 4), F(1)),
        (F(1), F(1, 2), F(1, 2), F(0)),
        (PowerMap.constant(F(1)), PowerMap.constant(F(1, 2)), PowerMap.constant(F(0))),
    )


@pytest.mark.parametrize(
    "lo, hi, expected",
    [
        (F(5, 8), F(3, 4), F(5, 8)),
        (F(3, 8), F(5, 8), F(1, 2)),
        (F(5, 8), F(7, 8), F(3, 4)),
        (F(1, 8), F(3, 8), F(1, 8)),
    ],
)
def test_level_left_edge(staircase, lo, hi, expected):
    interval = SubInterval(lo, hi)
    assert level_left_edge(staircase, interval, staircase(hi)) == expected
