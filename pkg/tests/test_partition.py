from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from endpoint_lab.default_corpus import DEFAULT_ORDER, default_corpus
from endpoint_lab.errors import DomainError, PartitionError, RuleViolationError
from endpoint_lab.interval import SubInterval, irrational_point
from endpoint_lab.models import PiecewiseMonotone
from endpoint_lab.numeric import surd
from endpoint_lab.partition import (
    ConvexCombination,
    LeftEndpoint,
    Midpoint,
    Partition,
    RightEndpoint,
    TableRule,
    concatenate,
    darboux_gap_probe,
    lower_darboux,
    mesh,
    parse_rule,
    refine,
    riemann_sum,
    right_sum,
    uniform_partition,
    upper_darboux,
)

F = Fraction

rules = st.one_of(
    st.just(RightEndpoint()),
    st.just(LeftEndpoint()),
    st.just(Midpoint()),
    st.fractions(0, 1, max_denominator=10).map(ConvexCombination),
)


def test_uniform_partition():
    partition = uniform_partition(F(0), F(1), 4)
    assert partition.points == (0, F(1, 4), F(1, 2), F(3, 4), 1)
    assert partition.n == 4
    assert mesh(partition) == F(1, 4)


def test_invalid_partitions():
    with pytest.raises(PartitionError):
        Partition((F(0), F(0), F(1)))

    with pytest.raises(PartitionError):
        Partition((F(0),))

    with pytest.raises(PartitionError):
        uniform_partition(F(0), F(1), 0)

    with pytest.raises(DomainError):
        uniform_partition(F(1), F(1), 2)


def test_from_points_sorts_and_dedups():
    partition = Partition.from_points([F(1), F(0), F(1, 2), F(1)])
    assert partition.points == (0, F(1, 2), 1)


def test_json_keeps_surds():
    partition = Partition((F(0), surd(-1, 1), F(1)))
    assert partition.to_json() == ["0", "-1+1*sqrt(2)", "1"]
    assert Partition.from_json(partition.to_json()) == partition


def test_sums_of_decreasing_line(corpus):
    f = corpus.get("linear_down")
    partition = uniform_partition(F(0), F(1), 8)
    assert right_sum(f, partition) == F(7, 16)
    assert riemann_sum(f, partition, LeftEndpoint()) == F(9, 16)
    assert riemann_sum(f, partition, Midpoint()) == F(1, 2)
    assert upper_darboux(f, partition) == F(9, 16)
    assert lower_darboux(f, partition) == F(7, 16)


def test_dirichlet_sums(corpus):
    f = corpus.get("dirichlet")

    for j in range(1, 5):
        partition = uniform_partition(F(0), F(1), 3**j)
        assert riemann_sum(f, partition, ConvexCombination(F(1, 3))) == 1
        assert upper_darboux(f, partition) - lower_darboux(f, partition) == 1

    partition = uniform_partition(F(0), F(1), 2)
    table = TableRule(
        tuple(
            (lo, hi, irrational_point(SubInterval.open(lo, hi)))
            for lo, hi in partition.intervals()
        )
    )
    assert riemann_sum(f, partition, table) == 0


def test_rule_violation(corpus):
    f = corpus.get("tent")
    partition = uniform_partition(F(0), F(1), 2)

    with pytest.raises(RuleViolationError):
        riemann_sum(f, partition, TableRule(((F(0), F(1, 2), F(3, 4)),)))


def test_wrong_interval(corpus):
    with pytest.raises(PartitionError):
        right_sum(corpus.get("tent"), uniform_partition(F(0), F(2), 4))


def test_parse_rule():
    assert isinstance(parse_rule("right"), RightEndpoint)
    assert isinstance(parse_rule("left"), LeftEndpoint)
    assert isinstance(parse_rule("midpoint"), Midpoint)
    assert parse_rule("convex:1/3") == ConvexCombination(F(1, 3))
    assert str(parse_rule("convex:1/3")) == "convex:1/3"

    with pytest.raises(DomainError):
        parse_rule("random")

    with pytest.raises(DomainError):
        parse_rule("convex:2")


def test_refine_and_concatenate():
    coarse = uniform_partition(F(0), F(1), 2)
    fine = uniform_partition(F(0), F(1), 3)
    assert refine(coarse, fine).points == (0, F(1, 3), F(1, 2), F(2, 3), 1)

    joined = concatenate([coarse, uniform_partition(F(1), F(2), 2)])
    assert joined.points == (0, F(1, 2), 1, F(3, 2), 2)

    with pytest.raises(PartitionError):
        refine(coarse, uniform_partition(F(0), F(2), 2))

    with pytest.raises(PartitionError):
        concatenate([coarse, uniform_partition(F(2), F(3), 1)])


def test_darboux_gap_probe(corpus):
    assert darboux_gap_probe(corpus.get("linear_up"), 3) == [
        (F(3, 4), F(1, 4)),
        (F(5, 8), F(3, 8)),
        (F(9, 16), F(7, 16)),
    ]

    with pytest.raises(DomainError):
        darboux_gap_probe(corpus.get("linear_up"), 0)


@pytest.mark.parametrize("key", DEFAULT_ORDER)
@given(n=st.integers(1, 24), rule=rules)
def test_sums_are_sandwiched(key, n, rule):
    f = default_corpus.get(key)
    partition = uniform_partition(F(0), F(1), n)
    value = riemann_sum(f, partition, rule)
    assert lower_darboux(f, partition) <= value <= upper_darboux(f, partition)


@pytest.mark.parametrize("key", DEFAULT_ORDER)
@given(n=st.integers(1, 12), m=st.integers(1, 12))
def test_refinement_tightens_bracket(key, n, m):
    f = default_corpus.get(key)
    partition = uniform_partition(F(0), F(1), n)
    refined = refine(partition, uniform_partition(F(0), F(1), m))
    assert upper_darboux(f, refined) <= upper_darboux(f, partition)
    assert lower_darboux(f, refined) >= lower_darboux(f, partition)


def test_integer_points_are_rational(corpus):
    f = corpus.get("dirichlet")
    assert riemann_sum(f, Partition((0, 1))) == 1
    assert riemann_sum(f, Partition((0, F(1, 2), 1)), LeftEndpoint()) == 1
    assert riemann_sum(corpus.get("thomae"), Partition((0, 1))) == 1


@pytest.mark.parametrize("key", DEFAULT_ORDER)
def test_darboux_gap_probe_is_monotone(key):
    sums = darboux_gap_probe(default_corpus.get(key), 10)
    assert len(sums) == 10

    for (upper, lower), (finer_upper, finer_lower) in zip(sums, sums[1:]):
        assert finer_upper <= upper
        assert finer_lower >= lower
        assert finer_lower <= finer_upper


def _running_sup_model(f):
    g = f.running_sup()
    return g, PiecewiseMonotone(g.breakpoints, g.maps, tuple(zip(g.breakpoints, g.point_values)))


@pytest.mark.parametrize("key", DEFAULT_ORDER)
@given(points=st.lists(st.fractions(0, 1, max_denominator=32), max_size=8))
def test_running_sup_gap_is_bounded_by_mesh(key, points):
    g, model = _running_sup_model(default_corpus.get(key))
    partition = Partition.from_points([F(0), F(1), *points])
    gap = upper_darboux(model, partition) - lower_darboux(model, partition)
    assert gap <= (g(F(0)) - g(F(1))) * mesh(partition)
