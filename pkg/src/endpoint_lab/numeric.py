"""Exact scalars.

Every quantity the lemma machinery compares is either a `Fraction` or a
`QuadraticSurd` (an element of Q(sqrt 2) with a nonzero surd part), so all
inequalities are decided without rounding. `BoundedApprox` carries the few
genuinely irrational values the unbounded demo needs, each with an explicit
error bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math
import re
from typing import Union

import sympy

from .errors import DomainError, RationalError

ExactRational = Fraction

RATIONAL_PATTERN = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")
SURD_PATTERN = re.compile(
    r"^\s*(-?\d+(?:/\d+)?)\s*([+-])\s*(\d+(?:/\d+)?)\s*\*\s*sqrt\(2\)\s*$"
)


def rational(num: int, den: int = 1) -> Fraction:
    """Canonical reduced fraction with positive denominator.

    Raises:
        RationalError

    """
    if den == 0:
        raise RationalError("Zero denominator")

    return Fraction(num, den)


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Parse a "p/q" or "p" string.

    Decimal notation is rejected, the value must be given exactly.

    Raises:
        RationalError

    """
    if isinstance(value, Fraction):
        return value

    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)

    if not isinstance(value, str) or not (match := RATIONAL_PATTERN.match(value)):
        raise RationalError(f"'{value}' is not a 'p/q' rational")

    num, den = match.groups()
    return rational(int(num), int(den) if den is not None else 1)


def _exact_integer_root(value: int, degree: int) -> int | None:
    root, exact = sympy.integer_nthroot(value, degree)
    return int(root) if exact else None


def exact_root(value: Fraction, degree: int) -> Fraction | None:
    """The nonnegative rational `degree`-th root of `value`, if there is one."""
    if value < 0 or degree < 1:
        return None

    num = _exact_integer_root(value.numerator, degree)
    den = _exact_integer_root(value.denominator, degree)

    if num is None or den is None:
        return None

    return Fraction(num, den)


def surd_root(value: Fraction, degree: int) -> Scalar | None:
    """The nonnegative `degree`-th root of `value` if it lies in Q(sqrt 2).

    An irrational element of Q(sqrt 2) has a rational power only when it is
    s*sqrt(2) and the power is even.
    """
    if (root := exact_root(value, degree)) is not None:
        return root

    if degree % 2 or value < 0:
        return None

    scale = exact_root(value / 2 ** (degree // 2), degree)
    return None if scale is None else QuadraticSurd(Fraction(0), scale)


def _parts(value: object) -> tuple[Fraction, Fraction] | None:
    if isinstance(value, QuadraticSurd):
        return value.a, value.b

    if isinstance(value, (int, Fraction)):
        return Fraction(value), Fraction(0)

    return None


def surd(a: int | Fraction, b: int | Fraction) -> Scalar:
    """a + b*sqrt(2), collapsed to a `Fraction` when b is zero."""
    a, b = Fraction(a), Fraction(b)

    if b == 0:
        return a

    return QuadraticSurd(a, b)


def sign(value: Scalar) -> int:
    """Exact sign of a scalar."""
    if isinstance(value, QuadraticSurd):
        return value.sign()

    return (value > 0) - (value < 0)


@dataclass(frozen=True, eq=False)
class QuadraticSurd:
    """The irrational number a + b*sqrt(2)."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        if self.b == 0:
            raise RationalError("Surd part must be nonzero")

    def sign(self) -> int:
        a_sign = (self.a > 0) - (self.a < 0)
        b_sign = 1 if self.b > 0 else -1

        if a_sign in (0, b_sign):
            return b_sign

        # a and b*sqrt(2) have opposite signs; a^2 == 2b^2 is impossible
        return a_sign if self.a * self.a > 2 * self.b * self.b else b_sign

    def inverse(self) -> QuadraticSurd:
        norm = self.a * self.a - 2 * self.b * self.b
        return QuadraticSurd(self.a / norm, -self.b / norm)

    def _compare(self, other: object) -> int | None:
        if (parts := _parts(other)) is None:
            return None

        return sign(surd(self.a - parts[0], self.b - parts[1]))

    def __add__(self, other):
        if (parts := _parts(other)) is None:
            return NotImplemented

        return surd(self.a + parts[0], self.b + parts[1])

    __radd__ = __add__

    def __sub__(self, other):
        if (parts := _parts(other)) is None:
            return NotImplemented

        return surd(self.a - parts[0], self.b - parts[1])

    def __rsub__(self, other):
        if (parts := _parts(other)) is None:
            return NotImplemented

        return surd(parts[0] - self.a, parts[1] - self.b)

    def __mul__(self, other):
        if (parts := _parts(other)) is None:
            return NotImplemented

        c, d = parts
        return surd(self.a * c + 2 * self.b * d, self.a * d + self.b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QuadraticSurd):
            return self * other.inverse()

        if (parts := _parts(other)) is None:
            return NotImplemented

        return surd(self.a / parts[0], self.b / parts[0])

    def __rtruediv__(self, other):
        if _parts(other) is None:
            return NotImplemented

        return self.inverse() * other

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented

        base = self if exponent >= 0 else self.inverse()
        result: Scalar = Fraction(1)

        for _ in range(abs(exponent)):
            result = result * base

        return result

    def __eq__(self, other):
        if (parts := _parts(other)) is None:
            return NotImplemented

        return (self.a, self.b) == parts

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        if (result := self._compare(other)) is None:
            return NotImplemented

        return result < 0

    def __le__(self, other):
        if (result := self._compare(other)) is None:
            return NotImplemented

        return result <= 0

    def __gt__(self, other):
        if (result := self._compare(other)) is None:
            return NotImplemented

        return result > 0

    def __ge__(self, other):
        if (result := self._compare(other)) is None:
            return NotImplemented

        return result >= 0

    def __floor__(self) -> int:
        den = math.lcm(self.a.denominator, self.b.denominator)
        a_num = self.a.numerator * (den // self.a.denominator)
        b_num = self.b.numerator * (den // self.b.denominator)
        root, _ = sympy.integer_nthroot(2 * b_num * b_num, 2)
        # floor(b_num * sqrt(2)); the product is never an integer
        b_floor = int(root) if b_num > 0 else -int(root) - 1
        return (a_num + b_floor) // den

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(2)

    def __str__(self) -> str:
        return format_scalar(self)


Scalar = Union[Fraction, QuadraticSurd]


def format_scalar(value: Scalar | int) -> str:
    """Serialize as "p/q" or "a+b*sqrt(2)"."""
    if isinstance(value, QuadraticSurd):
        operator = "+" if value.b > 0 else "-"
        return f"{value.a}{operator}{abs(value.b)}*sqrt(2)"

    return str(Fraction(value))


def parse_scalar(value: str | int | Fraction) -> Scalar:
    """Inverse of `format_scalar`.

    Raises:
        RationalError

    """
    if isinstance(value, str) and (match := SURD_PATTERN.match(value)):
        a, operator, b = match.groups()
        b_value = parse_rational(b)
        return surd(parse_rational(a), b_value if operator == "+" else -b_value)

    return parse_rational(value)


@dataclass(frozen=True)
class BoundedApprox:
    """An unknown real r with |r - value| <= error_bound."""

    value: Fraction
    error_bound: Fraction = Fraction(0)

    def __post_init__(self):
        if self.error_bound < 0:
            raise DomainError(f"Error bound {self.error_bound} is negative")

    @property
    def lower(self) -> Fraction:
        return self.value - self.error_bound

    @property
    def upper(self) -> Fraction:
        return self.value + self.error_bound

    def contains(self, x: Fraction) -> bool:
        return self.lower <= x <= self.upper

    @staticmethod
    def _coerce(other: object) -> BoundedApprox | None:
        if isinstance(other, BoundedApprox):
            return other

        if isinstance(other, (int, Fraction)):
            return BoundedApprox(Fraction(other))

        return None

    def __add__(self, other):
        if (other := self._coerce(other)) is None:
            return NotImplemented

        return BoundedApprox(
            self.value + other.value, self.error_bound + other.error_bound
        )

    __radd__ = __add__

    def __neg__(self):
        return BoundedApprox(-self.value, self.error_bound)

    def __sub__(self, other):
        if (other := self._coerce(other)) is None:
            return NotImplemented

        return self + (-other)

    def __rsub__(self, other):
        if (other := self._coerce(other)) is None:
            return NotImplemented

        return other + (-self)

    def __mul__(self, other):
        if (other := self._coerce(other)) is None:
            return NotImplemented

        error = (
            abs(self.value) * other.error_bound
            + abs(other.value) * self.error_bound
            + self.error_bound * other.error_bound
        )
        return BoundedApprox(self.value * other.value, error)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{self.value} ± {self.error_bound}"


def sqrt_approx(x: Fraction | int, error_bound: Fraction | int) -> BoundedApprox:
    """Square root of a nonnegative rational within `error_bound`.

    The result brackets sqrt(x) between two rationals obtained from the
    integer square root of a scaled numerator, so the bound is proven by
    construction rather than estimated.

    Raises:
        DomainError

    """
    x, error_bound = Fraction(x), Fraction(error_bound)

    if x < 0:
        raise DomainError(f"Square root of negative {x}")

    if error_bound <= 0:
        raise DomainError(f"Error bound {error_bound} is not positive")

    if x == 0:
        return BoundedApprox(Fraction(0))

    num, den = x.numerator, x.denominator
    scale = math.ceil(1 / (2 * den * error_bound))
    root, exact = sympy.integer_nthroot(num * den * scale * scale, 2)
    root = int(root)

    if exact:
        return BoundedApprox(Fraction(root, den * scale))

    return BoundedApprox(
        Fraction(2 * root + 1, 2 * den * scale), Fraction(1, 2 * den * scale)
    )
