"""Elementary maps and piecewise monotone profiles.

A profile is the explicit representation of a running supremum
g(x) = sup(f, [x, b]) (or, before negation, a running infimum): exact point
values at breakpoints and an elementary map on each open piece between them.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .errors import FunctionDomainError
from .interval import SubInterval
from .numeric import Scalar, format_scalar, surd_root


@dataclass(frozen=True)
class PowerMap:
    """x -> offset + coef * x**exponent."""

    offset: Fraction = Fraction(0)
    coef: Fraction = Fraction(0)
    exponent: int = 0

    def __post_init__(self):
        if self.exponent == 0 and self.coef != 0:
            object.__setattr__(self, "offset", self.offset + self.coef)
            object.__setattr__(self, "coef", Fraction(0))

        if self.coef == 0:
            object.__setattr__(self, "exponent", 0)

    @classmethod
    def constant(cls, value: Fraction) -> PowerMap:
        return cls(Fraction(value))

    @classmethod
    def linear(cls, p: Fraction, q: Fraction) -> PowerMap:
        return cls(Fraction(p), Fraction(q), 1)

    @property
    def is_constant(self) -> bool:
        return self.coef == 0

    def __call__(self, x: Scalar) -> Scalar:
        if self.is_constant:
            return self.offset

        return self.offset + self.coef * x**self.exponent

    def affine(self, alpha: Fraction, beta: Fraction) -> PowerMap:
        return PowerMap(alpha * self.offset + beta, alpha * self.coef, self.exponent)

    def negate(self) -> PowerMap:
        return self.affine(Fraction(-1), Fraction(0))

    def solve(self, value: Fraction, lo: Fraction, hi: Fraction) -> Scalar:
        """The point of (lo, hi) where the map equals `value`.

        The point is rational or in Q(sqrt 2); any other crossing is rejected.

        Raises:
            FunctionDomainError

        """
        if self.is_constant:
            raise FunctionDomainError(f"Constant map {self} has no level crossing")

        target = (value - self.offset) / self.coef
        side = -1 if hi <= 0 else 1
        degree = abs(self.exponent)

        if self.exponent < 0:
            if target == 0:
                raise FunctionDomainError(f"{self} never reaches {value}")
            target = 1 / target

        root = surd_root(target * side**degree, degree)

        if root is None or not lo < side * root < hi:
            raise FunctionDomainError(
                f"Level {value} of {self} is not crossed at a point of Q(sqrt 2)"
                f" of ({lo}, {hi})"
            )

        return side * root

    def __str__(self) -> str:
        if self.is_constant:
            return str(self.offset)

        return f"{self.offset} + {self.coef}*x^{self.exponent}"


@dataclass(frozen=True)
class MonotoneProfile:
    """Point values at breakpoints s_0 < ... < s_m and a map on each (s_{i-1}, s_i).

    Interior breakpoints where a monotone piece meets a constant level may lie
    in Q(sqrt 2); the ends are rational.
    """

    breakpoints: tuple[Scalar, ...]
    point_values: tuple[Scalar, ...]
    maps: tuple[PowerMap, ...]

    def __post_init__(self):
        if len(self.point_values) != len(self.breakpoints):
            raise FunctionDomainError("One point value per breakpoint required")

        if len(self.maps) != len(self.breakpoints) - 1 or not self.maps:
            raise FunctionDomainError("One map per piece required")

    @classmethod
    def constant(cls, lo: Fraction, hi: Fraction, value: Scalar) -> MonotoneProfile:
        return cls((lo, hi), (value, value), (PowerMap.constant(value),))

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def __call__(self, x: Scalar) -> Scalar:
        index = bisect_left(self.breakpoints, x)

        if index < len(self.breakpoints) and self.breakpoints[index] == x:
            return self.point_values[index]

        if index == 0 or index == len(self.breakpoints):
            lo, hi = self.domain
            raise FunctionDomainError(f"{format_scalar(x)} outside [{lo}, {hi}]")

        return self.maps[index - 1](x)

    def affine(self, alpha: Fraction, beta: Fraction) -> MonotoneProfile:
        return MonotoneProfile(
            self.breakpoints,
            tuple(alpha * value + beta for value in self.point_values),
            tuple(piece.affine(alpha, beta) for piece in self.maps),
        )

    def negate(self) -> MonotoneProfile:
        return self.affine(Fraction(-1), Fraction(0))

    def compress(self) -> MonotoneProfile:
        """Drop interior breakpoints inside a single constant stretch."""
        breakpoints = [self.breakpoints[0]]
        point_values = [self.point_values[0]]
        maps = [self.maps[0]]

        for index in range(1, len(self.maps)):
            value = self.point_values[index]
            left, right = maps[-1], self.maps[index]
            if left.is_constant and left == right and left.offset == value:
                continue
            breakpoints.append(self.breakpoints[index])
            point_values.append(value)
            maps.append(right)

        breakpoints.append(self.breakpoints[-1])
        point_values.append(self.point_values[-1])
        return MonotoneProfile(tuple(breakpoints), tuple(point_values), tuple(maps))

    def __str__(self) -> str:
        pieces = ", ".join(
            f"{format_scalar(s)}:{format_scalar(v)}"
            for s, v in zip(self.breakpoints, self.point_values)
        )
        return f"Profile({pieces})"


def level_left_edge(g: MonotoneProfile, interval: SubInterval, level: Scalar) -> Scalar:
    """inf{x in [lo, hi] : g(x) = level} for level = g(hi).

    Walks leftwards from hi across constant pieces at `level`; a strictly
    monotone piece or a different level stops the walk. The result is a
    breakpoint of g or an endpoint of the interval.
    """
    edge = interval.hi
    breakpoints = g.breakpoints

    while edge > interval.lo:
        index = bisect_left(breakpoints, edge)
        piece = g.maps[index - 1]

        if not piece.is_constant or piece.offset != level:
            break

        left = max(interval.lo, breakpoints[index - 1])
        edge = left

        if left == interval.lo or g.point_values[index - 1] != level:
            break

    return edge
