from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math

from .errors import EmptyIntervalError
from .numeric import QuadraticSurd, Scalar, format_scalar, surd

# Multipliers in (0, 1) with pairwise independent surd parts; at least one of
# them keeps lo + (hi - lo) * m irrational for any nondegenerate [lo, hi].
IRRATIONAL_MULTIPLIERS = (
    surd(-1, 1),
    surd(2, -1),
    surd(0, Fraction(1, 4)),
)


@dataclass(frozen=True)
class SubInterval:
    lo: Scalar
    hi: Scalar
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if self.lo > self.hi:
            raise EmptyIntervalError(self.lo, self.hi)

        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise EmptyIntervalError(self.lo, self.hi)

    @classmethod
    def closed(cls, lo: Scalar, hi: Scalar) -> SubInterval:
        return cls(lo, hi)

    @classmethod
    def right_open(cls, lo: Scalar, hi: Scalar) -> SubInterval:
        return cls(lo, hi, hi_closed=False)

    @classmethod
    def open(cls, lo: Scalar, hi: Scalar) -> SubInterval:
        return cls(lo, hi, lo_closed=False, hi_closed=False)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Scalar) -> bool:
        if x < self.lo or x > self.hi:
            return False

        if x == self.lo and not self.lo_closed:
            return False

        if x == self.hi and not self.hi_closed:
            return False

        return True

    def within(self, lo: Scalar, hi: Scalar) -> bool:
        """Whether the interval lies inside [lo, hi]."""
        return lo <= self.lo and self.hi <= hi

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_scalar(self.lo)}, {format_scalar(self.hi)}{right}"


def _first_integer(lo: Scalar, lo_closed: bool) -> int:
    first = math.ceil(lo)

    if first == lo and not lo_closed:
        first += 1

    return first


def _simplest(
    lo: Scalar,
    lo_closed: bool,
    hi: Scalar | None,
    hi_closed: bool,
) -> Fraction:
    # Stern-Brocot descent, one continued fraction run per level; hi=None is +inf
    first = _first_integer(lo, lo_closed)

    if hi is None or first < hi or (first == hi and hi_closed):
        return Fraction(first)

    whole = math.floor(lo)
    lo_frac = lo - whole
    hi_frac = hi - whole
    inner = _simplest(
        1 / hi_frac,
        hi_closed,
        1 / lo_frac if lo_frac != 0 else None,
        lo_closed,
    )
    return whole + 1 / inner


def smallest_denominator(interval: SubInterval) -> tuple[int, Fraction]:
    """Least denominator of a fraction in the interval and its leftmost witness.

    Raises:
        EmptyIntervalError

    """
    if interval.is_point:
        if isinstance(interval.lo, QuadraticSurd):
            raise EmptyIntervalError(interval.lo, interval.hi)
        return interval.lo.denominator, interval.lo

    simplest = _simplest(
        interval.lo, interval.lo_closed, interval.hi, interval.hi_closed
    )
    den = simplest.denominator
    witness = Fraction(_first_integer(interval.lo * den, interval.lo_closed), den)
    return den, witness


def rational_point(interval: SubInterval) -> Fraction:
    """A rational inside the interval (the smallest-denominator witness)."""
    return smallest_denominator(interval)[1]


def irrational_point(interval: SubInterval) -> QuadraticSurd:
    """An element of Q(sqrt 2) minus Q strictly inside a nondegenerate interval.

    Raises:
        EmptyIntervalError

    """
    if interval.is_point:
        raise EmptyIntervalError(interval.lo, interval.hi)

    width = interval.hi - interval.lo

    for multiplier in IRRATIONAL_MULTIPLIERS:
        point = interval.lo + width * multiplier
        if isinstance(point, QuadraticSurd):
            return point

    raise EmptyIntervalError(interval.lo, interval.hi)
