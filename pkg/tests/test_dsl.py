from fractions import Fraction
import json

from hypothesis import given, settings, strategies as st
import pytest

from endpoint_lab.default_corpus import DEFAULT_ORDER, default_corpus
from endpoint_lab.dsl import build_function, function_validator, parse_function, to_dsl
from endpoint_lab.errors import FunctionDomainError, FunctionSyntaxError
from endpoint_lab.models import (
    DirichletIndicator,
    FunctionModel,
    Negate,
    PiecewiseMonotone,
    Thomae,
)

F = Fraction

TENT = """
{"kind": "piecewise",
 "pieces": [{"kind": "linear", "p": "0", "q": "1", "domain": ["0", "1/2"]},
            {"kind": "linear", "p": "1", "q": "-1", "domain": ["1/2", "1"]}]}
"""


def test_parse_tent():
    f = parse_function(TENT)
    assert isinstance(f, PiecewiseMonotone)
    assert f.evaluate(F(1, 4)) == F(1, 4)
    assert f.evaluate(F(3, 4)) == F(1, 4)
    assert f.evaluate(F(1, 2)) == F(1, 2)


def test_build_kinds():
    assert build_function({"kind": "thomae"}) == Thomae()
    assert build_function(
        {"kind": "dirichlet", "hi": "2", "lo": "-1", "domain": ["0", "1"]}
    ) == DirichletIndicator(F(2), F(-1))
    assert isinstance(build_function({"kind": "negate", "inner": {"kind": "thomae"}}), Negate)

    square = build_function({"kind": "monomial", "exponent": 2, "domain": ["0", "2"]})
    assert square.evaluate(F(3, 2)) == F(9, 4)

    shifted = build_function(
        {"kind": "affine", "alpha": "2", "beta": "1/2", "inner": {"kind": "thomae"}}
    )
    assert shifted.evaluate(F(1, 2)) == F(3, 2)


def test_overrides():
    f = build_function(
        {
            "kind": "piecewise",
            "pieces": [
                {"kind": "constant", "value": "0", "domain": ["0", "1/2"]},
                {"kind": "constant", "value": "1", "domain": ["1/2", "1"]},
            ],
            "overrides": [{"at": "1/2", "value": "-1"}],
        }
    )
    assert f.evaluate(F(1, 2)) == -1
    assert f.evaluate(F(1, 4)) == 0


@pytest.mark.parametrize("key", DEFAULT_ORDER)
def test_description_is_inverted(key):
    f = default_corpus.get(key)
    assert build_function(to_dsl(f)) == f
    assert build_function(to_dsl(Negate(f))) == Negate(f)


@pytest.mark.parametrize(
    "text",
    [
        "{",
        "[]",
        '{"kind": "spline"}',
        '{"kind": "constant", "domain": ["0", "1"]}',
        '{"kind": "constant", "value": 5, "domain": ["0", "1"]}',
        '{"kind": "constant", "value": "0.5", "domain": ["0", "1"]}',
        '{"kind": "constant", "value": "1/0", "domain": ["0", "1"]}',
        '{"kind": "constant", "value": "1", "domain": ["0"]}',
        '{"kind": "monomial", "exponent": "2", "domain": ["0", "1"]}',
        '{"kind": "monomial", "exponent": 1.5, "domain": ["0", "1"]}',
        '{"kind": "piecewise", "pieces": []}',
        '{"kind": "negate"}',
        '{"kind": "affine", "alpha": "2", "beta": "0", "inner": {"kind": "spline"}}',
        """{"kind": "piecewise", "pieces": [
            {"kind": "thomae", "domain": ["0", "1"]}]}""",
        """{"kind": "piecewise", "pieces": [
            {"kind": "constant", "value": "0", "domain": ["0", "1"]}],
           "overrides": [{"at": "1"}]}""",
    ],
)
def test_syntax_errors(text):
    with pytest.raises(FunctionSyntaxError):
        parse_function(text)


def test_syntax_error_names_location():
    with pytest.raises(FunctionSyntaxError) as info:
        build_function({"kind": "negate", "inner": {"kind": "constant", "value": 5}})

    assert "inner" in str(info.value)


def test_schema_is_packaged():
    schema = function_validator().schema
    assert schema["$schema"].endswith("2020-12/schema")
    assert set(schema["$defs"]) >= {"function", "piece", "rational"}


@pytest.mark.parametrize(
    "data",
    [
        {"kind": "monomial", "exponent": -1, "domain": ["0", "1"]},
        {"kind": "monomial", "exponent": 2, "domain": ["-1", "1"]},
        {"kind": "constant", "value": "1", "domain": ["1", "0"]},
        {"kind": "thomae", "domain": ["0", "2"]},
        {"kind": "dirichlet", "hi": "0", "lo": "0", "domain": ["0", "1"]},
        {
            "kind": "piecewise",
            "pieces": [
                {"kind": "constant", "value": "0", "domain": ["0", "1/3"]},
                {"kind": "constant", "value": "0", "domain": ["1/2", "1"]},
            ],
        },
        {
            "kind": "piecewise",
            "pieces": [{"kind": "constant", "value": "0", "domain": ["0", "1"]}],
            "overrides": [{"at": "1/2", "value": "1"}],
        },
    ],
)
def test_domain_errors(data):
    with pytest.raises(FunctionDomainError):
        parse_function(json.dumps(data))


rationals = st.one_of(
    st.integers(-3, 3).map(str),
    st.tuples(st.integers(-3, 3), st.integers(0, 4)).map(lambda pair: f"{pair[0]}/{pair[1]}"),
    st.sampled_from([" 1 / 2 ", "0.5", "", 1, None]),
)
domains = st.lists(rationals, min_size=1, max_size=3)
elementary = st.fixed_dictionaries(
    {"kind": st.sampled_from(["constant", "linear", "monomial", "spline"])},
    optional={
        "value": rationals,
        "p": rationals,
        "q": rationals,
        "coef": rationals,
        "offset": rationals,
        "exponent": st.one_of(st.integers(-3, 3), st.sampled_from(["2", 2.0, 1.5, True])),
        "domain": domains,
    },
)
leaves = st.one_of(
    elementary,
    st.fixed_dictionaries(
        {"kind": st.just("piecewise"), "pieces": st.lists(elementary, max_size=3)},
        optional={
            "overrides": st.lists(
                st.fixed_dictionaries({"at": rationals}, optional={"value": rationals}),
                max_size=2,
            )
        },
    ),
    st.fixed_dictionaries(
        {"kind": st.sampled_from(["dirichlet", "thomae"])},
        optional={"hi": rationals, "lo": rationals, "v0": rationals, "domain": domains},
    ),
)
descriptions = st.recursive(
    leaves,
    lambda inner: st.one_of(
        st.fixed_dictionaries({"kind": st.just("negate")}, optional={"inner": inner}),
        st.fixed_dictionaries(
            {"kind": st.just("affine"), "inner": inner},
            optional={"alpha": rationals, "beta": rationals},
        ),
    ),
    max_leaves=3,
)


@settings(max_examples=300, deadline=None)
@given(data=descriptions)
def test_schema_and_builder_agree(data):
    if function_validator().is_valid(data):
        try:
            assert isinstance(build_function(data), FunctionModel)
        except FunctionDomainError:
            pass
    else:
        with pytest.raises(FunctionSyntaxError):
            build_function(data)
