"""Partitions, sample rules, Riemann sums and Darboux sums."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, PartitionError, RuleViolationError
from .interval import SubInterval
from .models import FunctionModel
from .numeric import Scalar, format_scalar, parse_rational, parse_scalar


@dataclass(frozen=True)
class Partition:
    points: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise PartitionError("A partition needs at least two points")

        for lo, hi in zip(self.points, self.points[1:]):
            if not lo < hi:
                raise PartitionError(
                    f"Points {format_scalar(lo)}, {format_scalar(hi)} are not increasing"
                )

    @classmethod
    def from_points(cls, points: Sequence[Scalar]) -> Partition:
        """Sorted, deduplicated points as a partition."""
        return cls(tuple(sorted(set(points))))

    @property
    def lo(self) -> Scalar:
        return self.points[0]

    @property
    def hi(self) -> Scalar:
        return self.points[-1]

    @property
    def n(self) -> int:
        return len(self.points) - 1

    def intervals(self) -> Iterator[tuple[Scalar, Scalar]]:
        return zip(self.points, self.points[1:])

    def to_json(self) -> list[str]:
        return [format_scalar(point) for point in self.points]

    @classmethod
    def from_json(cls, data: list[str]) -> Partition:
        return cls(tuple(parse_scalar(point) for point in data))

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __str__(self) -> str:
        return "{" + ", ".join(self.to_json()) + "}"


class SampleRule:
    """Picks the sample point of each closed subinterval [x, y]."""

    name = "rule"

    def select(self, lo: Scalar, hi: Scalar) -> Scalar:
        raise NotImplementedError

    def sample(self, lo: Scalar, hi: Scalar) -> Scalar:
        """Selected point, checked to lie in [lo, hi].

        Raises:
            RuleViolationError

        """
        point = self.select(lo, hi)

        if not lo <= point <= hi:
            raise RuleViolationError(format_scalar(point), format_scalar(lo), format_scalar(hi))

        return point

    def __str__(self) -> str:
        return self.name


class RightEndpoint(SampleRule):
    name = "right"

    def select(self, lo: Scalar, hi: Scalar) -> Scalar:
        return hi


class LeftEndpoint(SampleRule):
    name = "left"

    def select(self, lo: Scalar, hi: Scalar) -> Scalar:
        return lo


class Midpoint(SampleRule):
    name = "midpoint"

    def select(self, lo: Scalar, hi: Scalar) -> Scalar:
        return (lo + hi) / 2


@dataclass(frozen=True)
class ConvexCombination(SampleRule):
    """psi(x, y) = (1 - t) x + t y."""

    t: Fraction

    def __post_init__(self):
        if not 0 <= self.t <= 1:
            raise DomainError(f"Weight {self.t} outside [0, 1]")

    @property
    def name(self) -> str:
        return f"convex:{self.t}"

    def select(self, lo: Scalar, hi: Scalar) -> Scalar:
        return (1 - self.t) * lo + self.t * hi


@dataclass(frozen=True)
class TableRule(SampleRule):
    """Explicit sample points per subinterval, `default` elsewhere."""

    entries: tuple[tuple[Scalar, Scalar, Scalar], ...]
    default: SampleRule = field(default_factory=RightEndpoint)

    @property
    def name(self) -> str:
        return f"table:{len(self.entries)}"

    def select(self, lo: Scalar, hi: Scalar) -> Scalar:
        for start, end, point in self.entries:
            if start == lo and end == hi:
                return point

        return self.default.select(lo, hi)


def parse_rule(text: str) -> SampleRule:
    """"right", "left", "midpoint" or "convex:p/q".

    Raises:
        DomainError
        RationalError

    """
    if text == RightEndpoint.name:
        return RightEndpoint()

    if text == LeftEndpoint.name:
        return LeftEndpoint()

    if text == Midpoint.name:
        return Midpoint()

    if text.startswith("convex:"):
        return ConvexCombination(parse_rational(text.removeprefix("convex:")))

    raise DomainError(f"Unknown sample rule '{text}'")


def uniform_partition(a: Fraction, b: Fraction, n: int) -> Partition:
    """x_k = a + k(b - a)/n.

    Raises:
        DomainError
        PartitionError

    """
    if n < 1:
        raise PartitionError(f"Number of pieces must be positive, got {n}")

    if not a < b:
        raise DomainError(f"[{a}, {b}] is empty or degenerate")

    width = Fraction(b - a)
    return Partition(tuple(a + k * width / n for k in range(n + 1)))


def mesh(partition: Partition) -> Scalar:
    return max(hi - lo for lo, hi in partition.intervals())


def _check_partitions(f: FunctionModel, partition: Partition) -> None:
    a, b = f.domain

    if partition.lo != a or partition.hi != b:
        raise PartitionError(f"{partition} does not partition [{a}, {b}]")


def riemann_sum(
    f: FunctionModel, partition: Partition, rule: SampleRule | None = None
) -> Scalar:
    """Sum of f(x*)(x_k - x_{k-1}); right endpoints by default.

    Raises:
        PartitionError
        RuleViolationError

    """
    _check_partitions(f, partition)
    rule = rule or RightEndpoint()
    return sum(
        (f.evaluate(rule.sample(lo, hi)) * (hi - lo) for lo, hi in partition.intervals()),
        Fraction(0),
    )


def right_sum(f: FunctionModel, partition: Partition) -> Scalar:
    return riemann_sum(f, partition, RightEndpoint())


def upper_darboux(f: FunctionModel, partition: Partition) -> Scalar:
    """Sum of sup(f, [x_{k-1}, x_k])(x_k - x_{k-1}).

    Raises:
        PartitionError

    """
    _check_partitions(f, partition)
    return sum(
        (f.sup_on(SubInterval(lo, hi)) * (hi - lo) for lo, hi in partition.intervals()),
        Fraction(0),
    )


def lower_darboux(f: FunctionModel, partition: Partition) -> Scalar:
    """Sum of inf(f, [x_{k-1}, x_k])(x_k - x_{k-1}).

    Raises:
        PartitionError

    """
    _check_partitions(f, partition)
    return sum(
        (f.inf_on(SubInterval(lo, hi)) * (hi - lo) for lo, hi in partition.intervals()),
        Fraction(0),
    )


def refine(partition: Partition, other: Partition) -> Partition:
    """Common refinement of two partitions of the same interval.

    Raises:
        PartitionError

    """
    if partition.lo != other.lo or partition.hi != other.hi:
        raise PartitionError(f"{partition} and {other} partition different intervals")

    return Partition.from_points([*partition, *other])


def concatenate(partitions: Sequence[Partition]) -> Partition:
    """Join partitions of consecutive subintervals.

    Raises:
        PartitionError

    """
    points = list(partitions[0])

    for partition in partitions[1:]:
        if partition.lo != points[-1]:
            raise PartitionError(f"{partition} does not start at {format_scalar(points[-1])}")
        points.extend(partition.points[1:])

    return Partition(tuple(points))


def darboux_gap_probe(f: FunctionModel, depth: int) -> list[tuple[Scalar, Scalar]]:
    """(U(f, P_j), L(f, P_j)) for uniform P_j with 2^j pieces, j = 1..depth.

    Raises:
        DomainError

    """
    if depth < 1:
        raise DomainError(f"Depth must be positive, got {depth}")

    a, b = f.domain
    results = []

    for j in range(1, depth + 1):
        partition = uniform_partition(a, b, 2**j)
        results.append((upper_darboux(f, partition), lower_darboux(f, partition)))

    return results
