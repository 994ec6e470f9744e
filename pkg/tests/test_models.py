from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from endpoint_lab.default_corpus import DEFAULT_ORDER, default_corpus
from endpoint_lab.errors import (
    DomainError,
    EmptyIntervalError,
    FunctionDomainError,
)
from endpoint_lab.interval import SubInterval
from endpoint_lab.models import (
    AffineImage,
    DirichletIndicator,
    Negate,
    PiecewiseMonotone,
    Thomae,
    near_g_match_point,
    negate,
    running_sup,
    sup_on,
)
from endpoint_lab.numeric import QuadraticSurd, surd
from endpoint_lab.profile import PowerMap

F = Fraction

unit_points = st.fractions(0, 1, max_denominator=64)


@pytest.mark.parametrize(
    "x, value",
    [
        (F(0), F(1, 2)),
        (F(1, 4), F(3, 4)),
        (F(1, 2), F(1, 4)),
        (F(5, 8), F(1, 4)),
        (F(3, 4), F(1, 2)),
        (F(7, 8), F(0)),
        (F(1), F(0)),
    ],
)
def test_step_values(step, x, value):
    assert step.evaluate(x) == value


def test_step_extrema(step):
    assert step.sup_on(SubInterval(F(0), F(1, 2))) == 1
    assert step.sup_on(SubInterval(F(5, 8), F(1))) == F(1, 2)
    assert step.sup_on(SubInterval.open(F(3, 4), F(1))) == 0
    assert step.inf_on(SubInterval(F(1, 2), F(3, 4))) == F(1, 4)
    assert step.inf_on(SubInterval(F(0), F(1))) == 0


def test_step_running_sup(step):
    g = step.running_sup()
    assert g.breakpoints == (F(0), F(1, 2), F(3, 4), F(1))
    assert g.point_values == (F(1), F(1, 2), F(1, 2), F(0))
    assert [g(x) for x in (F(1, 4), F(5, 8), F(7, 8))] == [1, F(1, 2), 0]


def test_unattained_supremum_is_approached(step):
    window = SubInterval.right_open(F(0), F(1, 2))
    point = step.near_max_point(window, F(1), F(1, 100))
    assert window.contains(point)
    assert step.evaluate(point) > F(99, 100)


def test_unreachable_target(corpus):
    tent = corpus.get("tent")

    with pytest.raises(DomainError):
        tent.near_max_point(SubInterval(F(0), F(1)), F(2), F(1, 10))


def test_linear_running_sup(corpus):
    g = running_sup(corpus.get("linear_down"))
    assert g(F(1, 4)) == F(3, 4)
    assert running_sup(corpus.get("linear_up"))(F(1, 4)) == 1
    assert running_sup(corpus.get("tent"))(F(3, 4)) == F(1, 4)


@pytest.mark.parametrize("key", DEFAULT_ORDER)
@given(x=unit_points)
def test_running_sup_matches_oracle(key, x):
    f = default_corpus.get(key)
    assert f.running_sup()(x) == f.sup_on(SubInterval(x, F(1)))


@pytest.mark.parametrize("key", DEFAULT_ORDER)
@given(x=unit_points)
def test_running_inf_matches_oracle(key, x):
    f = default_corpus.get(key)
    assert f.running_inf()(x) == f.inf_on(SubInterval(x, F(1)))


@pytest.mark.parametrize("key", DEFAULT_ORDER)
@given(x=unit_points, y=unit_points)
def test_negation_duality(key, x, y):
    f = default_corpus.get(key)
    interval = SubInterval(min(x, y), max(x, y))
    assert negate(f).sup_on(interval) == -f.inf_on(interval)
    assert negate(f).running_sup()(x) == -f.running_inf()(x)


@pytest.mark.parametrize("key", DEFAULT_ORDER)
@given(x=unit_points, y=unit_points)
def test_near_extreme_points(key, x, y):
    f = default_corpus.get(key)
    interval = SubInterval(min(x, y), max(x, y))
    eta = F(1, 100)

    point = f.near_max_point(interval, f.sup_on(interval), eta)
    assert interval.contains(point)
    assert f.evaluate(point) > f.sup_on(interval) - eta

    point = f.near_min_point(interval, f.inf_on(interval), eta)
    assert interval.contains(point)
    assert f.evaluate(point) < f.inf_on(interval) + eta


def test_dirichlet():
    f = DirichletIndicator(F(1), F(0))
    assert f.evaluate(F(1, 3)) == 1
    assert f.evaluate(surd(-1, 1)) == 0
    assert f.sup_on(SubInterval(F(0), F(1, 10))) == 1
    assert f.inf_on(SubInterval(F(0), F(1, 10))) == 0
    assert f.inf_on(SubInterval(F(1, 2), F(1, 2))) == 1

    point = f.near_min_point(SubInterval.open(F(0), F(1)), F(0), F(1, 2))
    assert isinstance(point, QuadraticSurd)


def test_thomae_values():
    f = Thomae()
    assert f.evaluate(F(3, 6)) == F(1, 2)
    assert f.evaluate(F(0)) == 1
    assert f.evaluate(surd(0, F(1, 2))) == 0
    assert f.sup_on(SubInterval.open(F(1, 3), F(1, 2))) == F(1, 5)
    assert f.sup_on(SubInterval(F(1, 3), F(1, 2))) == F(1, 2)
    assert f.inf_on(SubInterval(F(1, 3), F(1, 2))) == 0
    assert Thomae(zero_value=F(-1)).inf_on(SubInterval(F(0), F(1, 2))) == -1


def test_thomae_running_sup(thomae_short):
    g = thomae_short.running_sup()
    assert g(F(0)) == 1
    assert g(F(1, 100)) == F(1, 3)
    assert g(F(1, 3)) == F(1, 3)
    assert g(F(7, 20)) == F(1, 5)
    assert g(F(2, 5)) == F(1, 5)


def _brute_force_sup(x, b, zero_value):
    if x == 0:
        return zero_value
    return max(
        F(1, q)
        for q in range(1, b.denominator + 1)
        for p in range(q + 1)
        if x <= F(p, q) <= b
    )


@given(x=st.fractions(0, F(2, 5), max_denominator=200))
def test_thomae_running_sup_brute_force(x):
    f = Thomae((F(0), F(2, 5)))
    assert f.running_sup()(x) == _brute_force_sup(x, f.domain[1], F(1))


def test_restrict_keeps_values(step):
    piece = step.restrict(F(1, 4), F(3, 4))
    assert piece.domain == (F(1, 4), F(3, 4))

    for x in (F(1, 4), F(1, 2), F(5, 8), F(3, 4)):
        assert piece.evaluate(x) == step.evaluate(x)

    assert piece.sup_on(SubInterval(F(5, 8), F(3, 4))) == F(1, 2)


def test_restrict_outside_domain(step):
    with pytest.raises(DomainError):
        step.restrict(F(1, 2), F(2))


def test_affine_image(corpus):
    tent = corpus.get("tent")
    whole = SubInterval(F(0), F(1))
    assert sup_on(AffineImage(tent, F(2), F(1)), whole) == 2
    assert AffineImage(tent, F(2), F(1)).inf_on(whole) == 1
    assert AffineImage(tent, F(-1)).sup_on(whole) == 0
    assert Negate(tent).inf_on(whole) == F(-1, 2)
    assert Negate(tent).restrict(F(0), F(1, 2)).evaluate(F(1, 4)) == F(-1, 4)


def test_invalid_models():
    with pytest.raises(FunctionDomainError):
        PiecewiseMonotone((F(1), F(0)), (PowerMap.constant(F(1)),))

    with pytest.raises(FunctionDomainError):
        PiecewiseMonotone((F(0), F(1)), (PowerMap(F(0), F(1), -1),))

    with pytest.raises(FunctionDomainError):
        PiecewiseMonotone((F(0), F(1)), (PowerMap.constant(F(1)),), ((F(1, 2), F(0)),))

    with pytest.raises(FunctionDomainError):
        Thomae((F(0), F(2)))

    with pytest.raises(FunctionDomainError):
        DirichletIndicator(F(0), F(1))


def test_domain_checks(step):
    with pytest.raises(DomainError):
        step.evaluate(F(2))

    with pytest.raises(DomainError):
        step.sup_on(SubInterval(F(0), F(2)))

    with pytest.raises(DomainError):
        step.near_max_point(SubInterval(F(0), F(1)), F(1), F(0))


def test_near_g_match_point_before_jump(step):
    g = step.running_sup()
    window = SubInterval.open(F(1, 4), F(1, 2))
    eta = F(1, 100)
    point = near_g_match_point(step, g, window, eta)
    assert window.contains(point)
    assert step.evaluate(point) > g(point) - eta


def test_near_g_match_point_on_decreasing_function(corpus):
    f = corpus.get("linear_down")
    window = SubInterval.open(F(1, 4), F(1, 2))
    point = near_g_match_point(f, f.running_sup(), window, F(1, 100))
    assert window.contains(point)


def test_near_g_match_point_needs_a_window(step):
    with pytest.raises(EmptyIntervalError):
        near_g_match_point(step, step.running_sup(), SubInterval(F(1, 2), F(1, 2)), F(1, 10))


@pytest.fixture
def dome():
    # 2 - x^2 on [0, 1), 3/2 on [1, 2]
    return PiecewiseMonotone(
        (F(0), F(1), F(2)), (PowerMap(F(2), F(-1), 2), PowerMap.constant(F(3, 2)))
    )


def test_running_sup_crosses_in_quadratic_field(dome):
    crossing = QuadraticSurd(F(0), F(1, 2))
    g = dome.running_sup()
    assert g.breakpoints == (F(0), crossing, F(2))
    assert g(F(1, 2)) == F(7, 4)
    assert g(crossing) == F(3, 2)
    assert g(F(1)) == F(3, 2)
    assert dome.sup_on(SubInterval(crossing, F(2))) == F(3, 2)
    assert dome.running_inf()(F(1, 2)) == 1


def test_crossing_outside_quadratic_field_is_rejected():
    with pytest.raises(FunctionDomainError):
        PiecewiseMonotone(
            (F(0), F(1), F(2)), (PowerMap(F(3), F(-1), 3), PowerMap.constant(F(5, 2)))
        )


def test_restriction_checks_new_crossings():
    f = PiecewiseMonotone(
        (F(0), F(1), F(2)), (PowerMap(F(2), F(-1), 2), PowerMap.linear(F(0), F(1)))
    )
    assert f.running_sup()(F(1, 2)) == 2
    assert f.restrict(F(0), F(3, 2)).running_sup()(F(1, 2)) == F(7, 4)

    with pytest.raises(FunctionDomainError):
        f.restrict(F(0), F(5, 4))


def test_integer_points_are_rational():
    assert DirichletIndicator(F(1), F(0)).evaluate(1) == 1
    assert DirichletIndicator(F(1), F(0)).sup_on(SubInterval(1, 1)) == 1
    assert Thomae().evaluate(1) == 1
    assert Thomae().evaluate(0) == 1
    assert Thomae(zero_value=F(1, 2)).evaluate(0) == F(1, 2)


thomae_intervals = st.tuples(
    st.fractions(0, 1, max_denominator=40),
    st.fractions(0, 1, max_denominator=40),
    st.booleans(),
    st.booleans(),
).filter(lambda item: item[0] < item[1])


@given(item=thomae_intervals)
def test_thomae_sup_matches_brute_force_on_open_ends(item):
    lo, hi, lo_closed, hi_closed = item
    interval = SubInterval(lo, hi, lo_closed, hi_closed)
    # the simplest rational strictly between two fractions has at most the
    # sum of their denominators
    expected = max(
        Thomae().evaluate(F(p, q))
        for q in range(1, 81)
        for p in range(q + 1)
        if interval.contains(F(p, q))
    )
    assert Thomae().sup_on(interval) == expected
