"""JSON description language for function models.

Every number is a "p/q" string and every domain a pair ["a", "b"]::

    {"kind": "linear", "p": "1", "q": "-1", "domain": ["0", "1"]}
    {"kind": "piecewise",
     "pieces": [{"kind": "linear", "p": "0", "q": "1", "domain": ["0", "1/2"]},
                {"kind": "constant", "value": "0", "domain": ["1/2", "1"]}],
     "overrides": [{"at": "1/2", "value": "1"}]}
    {"kind": "negate", "inner": {"kind": "thomae"}}

The grammar is the JSON schema shipped as package data in
schema/function.schema.json. A description that breaks it raises
`FunctionSyntaxError`; one that parses but names no valid model (pieces that
do not meet, an empty domain, an unbounded piece) raises `FunctionDomainError`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from importlib import resources
import json
from typing import Any

from jsonschema import Draft202012Validator, ValidationError

from .errors import FunctionDomainError, FunctionSyntaxError
from .models import (
    DEFAULT_ZERO_VALUE,
    AffineImage,
    DirichletIndicator,
    FunctionModel,
    Negate,
    PiecewiseMonotone,
    Thomae,
)
from .numeric import parse_rational
from .profile import PowerMap

SCHEMA_RESOURCE = ("schema", "function.schema.json")


@cache
def function_validator() -> Draft202012Validator:
    """Validator for the description grammar."""
    path = resources.files(__package__).joinpath(*SCHEMA_RESOURCE)
    schema = json.loads(path.read_text(encoding="utf-8"))
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


def validate_description(data: Any) -> None:
    """Check decoded JSON against the description grammar.

    Raises:
        FunctionSyntaxError

    """
    try:
        function_validator().validate(data)
    except ValidationError as exc:
        location = "/".join(str(part) for part in exc.absolute_path) or "<root>"
        raise FunctionSyntaxError(
            f"Invalid function description at {location}: {exc.message}"
        ) from exc


def _domain(data: dict, default: tuple[str, str] = ("0", "1")) -> tuple[Fraction, Fraction]:
    lo, hi = data.get("domain", default)
    return parse_rational(lo), parse_rational(hi)


def _power_map(data: dict) -> PowerMap:
    kind = data["kind"]

    if kind == "constant":
        return PowerMap.constant(parse_rational(data["value"]))

    if kind == "linear":
        return PowerMap.linear(parse_rational(data["p"]), parse_rational(data["q"]))

    return PowerMap(
        parse_rational(data.get("offset", "0")),
        parse_rational(data.get("coef", "1")),
        int(data["exponent"]),
    )


def _piecewise(data: dict) -> PiecewiseMonotone:
    breakpoints, maps = [], []

    for piece in data["pieces"]:
        lo, hi = _domain(piece)
        if breakpoints and breakpoints[-1] != lo:
            raise FunctionDomainError(
                f"Piece starting at {lo} does not continue at {breakpoints[-1]}"
            )
        if not breakpoints:
            breakpoints.append(lo)
        breakpoints.append(hi)
        maps.append(_power_map(piece))

    overrides = sorted(
        (parse_rational(override["at"]), parse_rational(override["value"]))
        for override in data.get("overrides", [])
    )
    return PiecewiseMonotone(tuple(breakpoints), tuple(maps), tuple(overrides))


def _build(data: dict) -> FunctionModel:
    kind = data["kind"]

    if kind == "piecewise":
        return _piecewise(data)

    if kind == "dirichlet":
        return DirichletIndicator(
            parse_rational(data["hi"]), parse_rational(data["lo"]), _domain(data)
        )

    if kind == "thomae":
        return Thomae(_domain(data), parse_rational(data.get("v0", DEFAULT_ZERO_VALUE)))

    if kind == "negate":
        return Negate(_build(data["inner"]))

    if kind == "affine":
        return AffineImage(
            _build(data["inner"]), parse_rational(data["alpha"]), parse_rational(data["beta"])
        )

    lo, hi = _domain(data)
    return PiecewiseMonotone((lo, hi), (_power_map(data),))


def build_function(data: Any) -> FunctionModel:
    """Build a model from decoded JSON.

    Raises:
        FunctionSyntaxError
        FunctionDomainError

    """
    validate_description(data)
    return _build(data)


def parse_function(dsl_text: str) -> FunctionModel:
    """Parse a JSON function description.

    Raises:
        FunctionSyntaxError
        FunctionDomainError

    """
    try:
        data = json.loads(dsl_text)
    except json.JSONDecodeError as exc:
        raise FunctionSyntaxError("Malformed function description", exc) from exc

    return build_function(data)


def _map_to_dsl(piece: PowerMap, lo: Fraction, hi: Fraction) -> dict:
    domain = [str(lo), str(hi)]

    if piece.is_constant:
        return {"kind": "constant", "value": str(piece.offset), "domain": domain}

    if piece.exponent == 1:
        return {
            "kind": "linear",
            "p": str(piece.offset),
            "q": str(piece.coef),
            "domain": domain,
        }

    return {
        "kind": "monomial",
        "coef": str(piece.coef),
        "exponent": piece.exponent,
        "offset": str(piece.offset),
        "domain": domain,
    }


def to_dsl(f: FunctionModel) -> dict:
    """Decoded JSON description of a model; `build_function` inverts it."""
    if isinstance(f, PiecewiseMonotone):
        pieces = [
            _map_to_dsl(piece, lo, hi)
            for lo, hi, piece in zip(f.breakpoints, f.breakpoints[1:], f.maps)
        ]
        if len(pieces) == 1 and not f.overrides:
            return pieces[0]
        return {
            "kind": "piecewise",
            "pieces": pieces,
            "overrides": [
                {"at": str(point), "value": str(value)} for point, value in f.overrides
            ],
        }

    if isinstance(f, DirichletIndicator):
        return {
            "kind": "dirichlet",
            "hi": str(f.hi),
            "lo": str(f.lo),
            "domain": [str(f.domain[0]), str(f.domain[1])],
        }

    if isinstance(f, Thomae):
        return {
            "kind": "thomae",
            "v0": str(f.zero_value),
            "domain": [str(f.domain[0]), str(f.domain[1])],
        }

    if isinstance(f, Negate):
        return {"kind": "negate", "inner": to_dsl(f.inner)}

    if isinstance(f, AffineImage):
        return {
            "kind": "affine",
            "alpha": str(f.alpha),
            "beta": str(f.beta),
            "inner": to_dsl(f.inner),
        }

    raise FunctionSyntaxError(f"No description for {type(f).__name__}")
