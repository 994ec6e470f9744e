from __future__ import annotations

from bisect import bisect_left, bisect_right
from collections.abc import Iterator
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
import logging
import math

from .errors import DomainError, EmptyIntervalError, FunctionDomainError, OracleDefectError
from .interval import SubInterval, irrational_point, rational_point, smallest_denominator
from .numeric import QuadraticSurd, Scalar, format_scalar
from .profile import MonotoneProfile, PowerMap

_LOGGER = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 64
DEFAULT_ZERO_VALUE = Fraction(1)

MAX = 1
MIN = -1


def _beats(value: Scalar, target: Scalar, eta: Fraction, sense: int) -> bool:
    return sense * (value - target) > -eta


class FunctionModel:
    """A bounded function on [a, b] with exact extrema oracles.

    Subclasses provide `domain` and the `_evaluate`, `_extremum` and
    `_near_extreme` hooks; `sense` is MAX or MIN.
    """

    domain: tuple[Fraction, Fraction]

    def _check_point(self, x: Scalar) -> None:
        a, b = self.domain
        if not a <= x <= b:
            raise DomainError(f"{format_scalar(x)} outside [{a}, {b}]")

    def _check_interval(self, interval: SubInterval) -> None:
        a, b = self.domain
        if not interval.within(a, b):
            raise DomainError(f"{interval} not inside [{a}, {b}]")

    def _evaluate(self, x: Scalar) -> Scalar:
        raise NotImplementedError

    def _extremum(self, interval: SubInterval, sense: int) -> Scalar:
        raise NotImplementedError

    def _near_extreme(
        self,
        interval: SubInterval,
        target: Scalar,
        eta: Fraction,
        sense: int,
        budget: int,
    ) -> Scalar:
        raise NotImplementedError

    def evaluate(self, x: Scalar) -> Scalar:
        """Exact value at x.

        Raises:
            DomainError

        """
        self._check_point(x)
        return self._evaluate(x)

    def sup_on(self, interval: SubInterval) -> Scalar:
        """Exact supremum over the interval, open ends included as limits.

        Raises:
            DomainError

        """
        self._check_interval(interval)
        return self._extremum(interval, MAX)

    def inf_on(self, interval: SubInterval) -> Scalar:
        """Exact infimum over the interval.

        Raises:
            DomainError

        """
        self._check_interval(interval)
        return self._extremum(interval, MIN)

    def near_max_point(
        self,
        interval: SubInterval,
        target: Scalar,
        eta: Fraction,
        budget: int = DEFAULT_SEARCH_BUDGET,
    ) -> Scalar:
        """A point x of the interval with f(x) > target - eta.

        Raises:
            DomainError
            OracleDefectError

        """
        self._check_interval(interval)
        if eta <= 0:
            raise DomainError(f"eta {eta} is not positive")
        return self._near_extreme(interval, target, eta, MAX, budget)

    def near_min_point(
        self,
        interval: SubInterval,
        target: Scalar,
        eta: Fraction,
        budget: int = DEFAULT_SEARCH_BUDGET,
    ) -> Scalar:
        """A point x of the interval with f(x) < target + eta.

        Raises:
            DomainError
            OracleDefectError

        """
        self._check_interval(interval)
        if eta <= 0:
            raise DomainError(f"eta {eta} is not positive")
        return self._near_extreme(interval, target, eta, MIN, budget)

    def running_sup(self) -> MonotoneProfile:
        """g(x) = sup(f, [x, b]), non-increasing."""
        raise NotImplementedError

    def running_inf(self) -> MonotoneProfile:
        """h(x) = inf(f, [x, b]), non-decreasing."""
        raise NotImplementedError

    def restrict(self, lo: Fraction, hi: Fraction) -> FunctionModel:
        """The same function on [lo, hi].

        A new right end can introduce a running-supremum level that a
        monotone piece crosses outside Q(sqrt 2).

        Raises:
            DomainError
            FunctionDomainError

        """
        raise NotImplementedError

    def negate(self) -> FunctionModel:
        return Negate(self)

    def _check_restriction(self, lo: Fraction, hi: Fraction) -> None:
        a, b = self.domain
        if not a <= lo < hi <= b:
            raise DomainError(f"[{lo}, {hi}] is not a subinterval of [{a}, {b}]")


def _running_sup_profile(
    breakpoints: tuple[Fraction, ...],
    point_values: tuple[Fraction, ...],
    maps: tuple[PowerMap, ...],
) -> MonotoneProfile:
    """sup(f, [x, b]) of a piecewise monotone f, built from b leftwards.

    Raises:
        FunctionDomainError

    """
    level = point_values[-1]
    edges, values, pieces = [breakpoints[-1]], [level], []

    for index in reversed(range(len(maps))):
        piece = maps[index]
        lo, hi = breakpoints[index], breakpoints[index + 1]
        at_lo, at_hi = piece(lo), piece(hi)

        if at_lo <= at_hi:
            level = max(at_hi, level)
            pieces.append(PowerMap.constant(level))
            limit = level
        elif at_hi >= level:
            pieces.append(piece)
            limit = at_lo
        elif at_lo <= level:
            pieces.append(PowerMap.constant(level))
            limit = level
        else:
            crossing = piece.solve(level, lo, hi)
            pieces.append(PowerMap.constant(level))
            edges.append(crossing)
            values.append(level)
            pieces.append(piece)
            limit = at_lo

        level = max(point_values[index], limit)
        edges.append(lo)
        values.append(level)

    return MonotoneProfile(
        tuple(reversed(edges)), tuple(reversed(values)), tuple(reversed(pieces))
    ).compress()


@dataclass(frozen=True)
class PiecewiseMonotone(FunctionModel):
    """Monotone elementary maps on the pieces between breakpoints.

    Inside (t_{i-1}, t_i) the value is `maps[i-1]`; at a breakpoint it is its
    override if one is given, else the value of the piece to its right (the
    last piece for b).
    """

    breakpoints: tuple[Fraction, ...]
    maps: tuple[PowerMap, ...]
    overrides: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        if len(self.breakpoints) < 2:
            raise FunctionDomainError("At least one piece required")

        if len(self.maps) != len(self.breakpoints) - 1:
            raise FunctionDomainError("One map per piece required")

        for lo, hi in zip(self.breakpoints, self.breakpoints[1:]):
            if lo >= hi:
                raise FunctionDomainError("Breakpoints must be strictly increasing")

        for lo, hi, piece in zip(self.breakpoints, self.breakpoints[1:], self.maps):
            if piece.exponent < 0 and lo <= 0 <= hi:
                raise FunctionDomainError(f"Piece {piece} on [{lo}, {hi}] is unbounded")
            if piece.exponent not in (0, 1) and lo < 0 < hi:
                raise FunctionDomainError(f"Piece {piece} on [{lo}, {hi}] straddles zero")

        for point, _ in self.overrides:
            if point not in self.breakpoints:
                raise FunctionDomainError(f"Override at {point} is not a breakpoint")

        # running extrema with a level crossing outside Q(sqrt 2) fail here
        _ = self._sup_profile, self._inf_profile

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    @cached_property
    def point_values(self) -> tuple[Fraction, ...]:
        overrides = dict(self.overrides)
        return tuple(
            overrides.get(point, self.maps[min(index, len(self.maps) - 1)](point))
            for index, point in enumerate(self.breakpoints)
        )

    def _evaluate(self, x: Scalar) -> Scalar:
        index = bisect_left(self.breakpoints, x)

        if self.breakpoints[index] == x:
            return self.point_values[index]

        return self.maps[index - 1](x)

    def _candidates(
        self, interval: SubInterval
    ) -> Iterator[tuple[Scalar, Scalar, bool, tuple | None]]:
        """(value, point, attained, segment) for breakpoints and piece ends.

        A non-attained candidate is the one-sided limit of `segment` at `point`.
        """
        for point, value in zip(self.breakpoints, self.point_values):
            if interval.contains(point):
                yield value, point, True, None

        for start, end, piece in zip(self.breakpoints, self.breakpoints[1:], self.maps):
            lo, hi = max(interval.lo, start), min(interval.hi, end)

            if lo > hi:
                continue

            if lo == hi:
                if start < lo < end:
                    yield piece(lo), lo, True, None
                continue

            lo_in = lo == interval.lo and interval.lo_closed and lo > start
            hi_in = hi == interval.hi and interval.hi_closed and hi < end
            yield piece(lo), lo, lo_in, (lo, hi, piece)
            yield piece(hi), hi, hi_in, (lo, hi, piece)

    def _extremum(self, interval: SubInterval, sense: int) -> Scalar:
        values = [value for value, *_ in self._candidates(interval)]
        return max(values) if sense == MAX else min(values)

    def _near_extreme(
        self,
        interval: SubInterval,
        target: Scalar,
        eta: Fraction,
        sense: int,
        budget: int,
    ) -> Scalar:
        candidates = sorted(
            self._candidates(interval), key=lambda item: sense * item[0], reverse=True
        )

        for value, point, attained, segment in candidates:
            if not _beats(value, target, eta, sense):
                break

            if attained:
                return point

            lo, hi, piece = segment
            step = ((hi if point == lo else lo) - point) / 2

            for _ in range(budget):
                probe = point + step
                if _beats(piece(probe), target, eta, sense):
                    return probe
                step /= 2

            raise OracleDefectError(f"approach {format_scalar(point)} in {interval}", budget)

        raise DomainError(f"No point of {interval} comes within {eta} of {target}")

    @cached_property
    def _sup_profile(self) -> MonotoneProfile:
        return _running_sup_profile(self.breakpoints, self.point_values, self.maps)

    @cached_property
    def _inf_profile(self) -> MonotoneProfile:
        return _running_sup_profile(
            self.breakpoints,
            tuple(-value for value in self.point_values),
            tuple(piece.negate() for piece in self.maps),
        ).negate()

    def running_sup(self) -> MonotoneProfile:
        return self._sup_profile

    def running_inf(self) -> MonotoneProfile:
        return self._inf_profile

    def restrict(self, lo: Fraction, hi: Fraction) -> PiecewiseMonotone:
        self._check_restriction(lo, hi)
        breakpoints = (lo, *(t for t in self.breakpoints if lo < t < hi), hi)
        maps = tuple(
            self.maps[bisect_right(self.breakpoints, (start + end) / 2) - 1]
            for start, end in zip(breakpoints, breakpoints[1:])
        )
        overrides = {point: value for point, value in self.overrides if lo < point < hi}
        overrides[lo] = self.evaluate(lo)
        overrides[hi] = self.evaluate(hi)
        return PiecewiseMonotone(breakpoints, maps, tuple(sorted(overrides.items())))


@dataclass(frozen=True)
class DirichletIndicator(FunctionModel):
    """`hi` on rationals and `lo` on irrationals."""

    hi: Fraction
    lo: Fraction
    domain: tuple[Fraction, Fraction] = (Fraction(0), Fraction(1))

    def __post_init__(self):
        if not self.hi > self.lo:
            raise FunctionDomainError("Dirichlet indicator needs hi > lo")

        if not self.domain[0] < self.domain[1]:
            raise FunctionDomainError("Domain must satisfy a < b")

    def _evaluate(self, x: Scalar) -> Scalar:
        return self.lo if isinstance(x, QuadraticSurd) else self.hi

    def _extremum(self, interval: SubInterval, sense: int) -> Scalar:
        if interval.is_point:
            return self._evaluate(interval.lo)

        return self.hi if sense == MAX else self.lo

    def _near_extreme(
        self,
        interval: SubInterval,
        target: Scalar,
        eta: Fraction,
        sense: int,
        budget: int,
    ) -> Scalar:
        if interval.is_point:
            candidates = [(self._evaluate(interval.lo), interval.lo)]
        else:
            candidates = [
                (self.hi, rational_point(interval)),
                (self.lo, irrational_point(interval)),
            ]

        for value, point in sorted(candidates, key=lambda item: sense * item[0], reverse=True):
            if _beats(value, target, eta, sense):
                return point

        raise DomainError(f"No point of {interval} comes within {eta} of {target}")

    def running_sup(self) -> MonotoneProfile:
        a, b = self.domain
        # b is rational, so f(b) = hi
        return MonotoneProfile((a, b), (self.hi, self.hi), (PowerMap.constant(self.hi),))

    def running_inf(self) -> MonotoneProfile:
        a, b = self.domain
        return MonotoneProfile((a, b), (self.lo, self.hi), (PowerMap.constant(self.lo),))

    def restrict(self, lo: Fraction, hi: Fraction) -> DirichletIndicator:
        self._check_restriction(lo, hi)
        return replace(self, domain=(lo, hi))


@dataclass(frozen=True)
class Thomae(FunctionModel):
    """1/q at p/q in lowest terms, `zero_value` at 0 and 0 at irrationals."""

    domain: tuple[Fraction, Fraction] = (Fraction(0), Fraction(1))
    zero_value: Fraction = DEFAULT_ZERO_VALUE

    def __post_init__(self):
        a, b = self.domain
        if not 0 <= a < b <= 1:
            raise FunctionDomainError("Thomae's function lives on subintervals of [0, 1]")

    def _evaluate(self, x: Scalar) -> Scalar:
        if isinstance(x, QuadraticSurd):
            return Fraction(0)

        if x == 0:
            return self.zero_value

        return Fraction(1, x.denominator)

    def _rational_candidates(self, interval: SubInterval) -> list[tuple[Scalar, Scalar]]:
        candidates = []
        rest = interval

        if interval.contains(0):
            candidates.append((self.zero_value, Fraction(0)))
            if interval.is_point:
                return candidates
            rest = SubInterval(interval.lo, interval.hi, False, interval.hi_closed)

        den, witness = smallest_denominator(rest)
        candidates.append((Fraction(1, den), witness))
        return candidates

    def _extremum(self, interval: SubInterval, sense: int) -> Scalar:
        if interval.is_point:
            return self._evaluate(interval.lo)

        if sense == MAX:
            return max(value for value, _ in self._rational_candidates(interval))

        if interval.contains(0):
            return min(Fraction(0), self.zero_value)

        return Fraction(0)

    def _near_extreme(
        self,
        interval: SubInterval,
        target: Scalar,
        eta: Fraction,
        sense: int,
        budget: int,
    ) -> Scalar:
        if interval.is_point:
            candidates = [(self._evaluate(interval.lo), interval.lo)]
        elif sense == MAX:
            candidates = self._rational_candidates(interval)
        else:
            candidates = [(Fraction(0), irrational_point(interval))]
            if interval.contains(0):
                candidates.append((self.zero_value, Fraction(0)))

        for value, point in sorted(candidates, key=lambda item: sense * item[0], reverse=True):
            if _beats(value, target, eta, sense):
                return point

        raise DomainError(f"No point of {interval} comes within {eta} of {target}")

    def running_sup(self) -> MonotoneProfile:
        a, b = self.domain
        # only fractions with denominator <= den(b) can beat f(b) = 1/den(b)
        limit = b.denominator
        points = sorted(
            {
                Fraction(p, q)
                for q in range(1, limit + 1)
                for p in range(math.ceil(a * q), math.floor(b * q) + 1)
            }
            | {a, b}
        )
        values = [self._evaluate(point) for point in points]

        for index in reversed(range(len(values) - 1)):
            values[index] = max(values[index], values[index + 1])

        return MonotoneProfile(
            tuple(points),
            tuple(values),
            tuple(PowerMap.constant(value) for value in values[1:]),
        ).compress()

    def running_inf(self) -> MonotoneProfile:
        a, b = self.domain
        at_a = min(Fraction(0), self.zero_value) if a == 0 else Fraction(0)
        return MonotoneProfile(
            (a, b), (at_a, self._evaluate(b)), (PowerMap.constant(Fraction(0)),)
        )

    def restrict(self, lo: Fraction, hi: Fraction) -> Thomae:
        self._check_restriction(lo, hi)
        return replace(self, domain=(lo, hi))


@dataclass(frozen=True)
class AffineImage(FunctionModel):
    """alpha * inner + beta."""

    inner: FunctionModel
    alpha: Fraction = Fraction(1)
    beta: Fraction = Fraction(0)

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.inner.domain

    def _evaluate(self, x: Scalar) -> Scalar:
        return self.alpha * self.inner._evaluate(x) + self.beta

    def _extremum(self, interval: SubInterval, sense: int) -> Scalar:
        if self.alpha == 0:
            return self.beta

        inner_sense = sense if self.alpha > 0 else -sense
        return self.alpha * self.inner._extremum(interval, inner_sense) + self.beta

    def _near_extreme(
        self,
        interval: SubInterval,
        target: Scalar,
        eta: Fraction,
        sense: int,
        budget: int,
    ) -> Scalar:
        if self.alpha == 0:
            if not _beats(self.beta, target, eta, sense):
                raise DomainError(f"No point of {interval} comes within {eta} of {target}")
            return interval.lo if interval.lo_closed else rational_point(interval)

        return self.inner._near_extreme(
            interval,
            (target - self.beta) / self.alpha,
            eta / abs(self.alpha),
            sense if self.alpha > 0 else -sense,
            budget,
        )

    def running_sup(self) -> MonotoneProfile:
        if self.alpha == 0:
            return MonotoneProfile.constant(*self.domain, self.beta)

        inner = self.inner.running_sup() if self.alpha > 0 else self.inner.running_inf()
        return inner.affine(self.alpha, self.beta)

    def running_inf(self) -> MonotoneProfile:
        if self.alpha == 0:
            return MonotoneProfile.constant(*self.domain, self.beta)

        inner = self.inner.running_inf() if self.alpha > 0 else self.inner.running_sup()
        return inner.affine(self.alpha, self.beta)

    def restrict(self, lo: Fraction, hi: Fraction) -> AffineImage:
        self._check_restriction(lo, hi)
        return replace(self, inner=self.inner.restrict(lo, hi))


@dataclass(frozen=True)
class Negate(AffineImage):
    alpha: Fraction = field(default=Fraction(-1), init=False)
    beta: Fraction = field(default=Fraction(0), init=False)


def evaluate(f: FunctionModel, x: Scalar) -> Scalar:
    return f.evaluate(x)


def sup_on(f: FunctionModel, interval: SubInterval) -> Scalar:
    return f.sup_on(interval)


def inf_on(f: FunctionModel, interval: SubInterval) -> Scalar:
    return f.inf_on(interval)


def near_max_point(
    f: FunctionModel,
    interval: SubInterval,
    target: Scalar,
    eta: Fraction,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> Scalar:
    return f.near_max_point(interval, target, eta, budget)


def running_sup(f: FunctionModel) -> MonotoneProfile:
    return f.running_sup()


def negate(f: FunctionModel) -> FunctionModel:
    return f.negate()


def near_g_match_point(
    f: FunctionModel,
    g: MonotoneProfile,
    window: SubInterval,
    eta: Fraction,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> Scalar:
    """A point u of the window with f(u) > g(u) - eta.

    Tries the windows [hi - w/2^j, hi) for j = 1, 2, ...; in each the
    supremum of f is compared with g at the window start, and a near
    maximizer is accepted once it matches g within eta.

    Raises:
        EmptyIntervalError
        OracleDefectError

    """
    if window.is_point:
        raise EmptyIntervalError(window.lo, window.hi)

    step = (window.hi - window.lo) / 2

    for _ in range(budget):
        start = window.hi - step
        span = SubInterval(start, window.hi, True, window.hi_closed)
        best = f.sup_on(span)

        if best > g(start) - eta / 2:
            point = f.near_max_point(span, best, eta / 2, budget)
            if f.evaluate(point) > g(point) - eta:
                _LOGGER.debug("%s: %s => %s", "near_g_match_point", window, point)
                return point

        step /= 2

    raise OracleDefectError(f"match g in {window}", budget)
