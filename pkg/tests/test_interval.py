from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from endpoint_lab.errors import EmptyIntervalError
from endpoint_lab.interval import (
    SubInterval,
    irrational_point,
    rational_point,
    smallest_denominator,
)
from endpoint_lab.numeric import QuadraticSurd, surd

F = Fraction


def test_empty_intervals():
    with pytest.raises(EmptyIntervalError):
        SubInterval(F(1), F(0))

    with pytest.raises(EmptyIntervalError):
        SubInterval.right_open(F(1), F(1))


def test_contains_respects_open_ends():
    interval = SubInterval.right_open(F(0), F(1))
    assert interval.contains(F(0))
    assert not interval.contains(F(1))
    assert not SubInterval.open(F(0), F(1)).contains(F(0))
    assert str(interval) == "[0, 1)"


@pytest.mark.parametrize(
    "interval, expected",
    [
        (SubInterval.closed(F(1, 3), F(1, 2)), (2, F(1, 2))),
        (SubInterval.open(F(0), F(1)), (2, F(1, 2))),
        (SubInterval.closed(F(0), F(1)), (1, F(0))),
        (SubInterval(F(1, 3), F(2, 5), lo_closed=False), (5, F(2, 5))),
        (SubInterval.open(F(1, 3), F(1, 2)), (5, F(2, 5))),
        (SubInterval.closed(F(3, 7), F(3, 7)), (7, F(3, 7))),
        (SubInterval.closed(F(5, 2), F(13, 4)), (1, F(3))),
    ],
)
def test_smallest_denominator(interval, expected):
    assert smallest_denominator(interval) == expected


def test_smallest_denominator_with_surd_ends():
    interval = SubInterval.open(surd(-1, 1), F(1, 2))
    assert smallest_denominator(interval) == (7, F(3, 7))


def _brute_force(lo, hi):
    q = 1
    while True:
        for p in range(int(lo * q) - 1, int(hi * q) + 2):
            if lo <= F(p, q) <= hi:
                return q, F(p, q)
        q += 1


@given(
    st.fractions(0, 1, max_denominator=30),
    st.fractions(0, 1, max_denominator=30),
)
def test_smallest_denominator_matches_brute_force(x, y):
    lo, hi = min(x, y), max(x, y)
    assert smallest_denominator(SubInterval.closed(lo, hi)) == _brute_force(lo, hi)


def test_rational_point():
    assert rational_point(SubInterval.open(F(0), F(1, 10))) == F(1, 11)


@pytest.mark.parametrize(
    "interval",
    [
        SubInterval.open(F(0), F(1)),
        SubInterval.closed(F(-3), F(-2)),
        SubInterval.open(F(0), surd(-1, 1)),
        SubInterval.open(surd(0, 1), surd(0, 2)),
    ],
)
def test_irrational_point(interval):
    point = irrational_point(interval)
    assert isinstance(point, QuadraticSurd)
    assert interval.lo < point < interval.hi


def test_irrational_point_of_a_point():
    with pytest.raises(EmptyIntervalError):
        irrational_point(SubInterval.closed(F(1), F(1)))
