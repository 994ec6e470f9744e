"""Lemma certificates and verification reports.

A certificate is the full transcript of one partition construction. It is
plain data: `engine.verify_certificate` recomputes every field from the
function and rejects the certificate on the first mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import json
from typing import Any

from .errors import CertificateCorruptionError, LabError
from .numeric import Scalar, format_scalar, parse_rational, parse_scalar
from .partition import Partition

SCHEMA_VERSION = 1
GROUP_NAMES = ("Q0", "Q1", "Q2", "Q3")


def _scalar_or_none(value: Scalar | None) -> str | None:
    return None if value is None else format_scalar(value)


def _parse_or_none(value: str | None) -> Scalar | None:
    return None if value is None else parse_scalar(value)


@dataclass(frozen=True)
class IndexClasses:
    """C, D, D' and its split into D'_0 and D'_1; indices run over 1..n."""

    c: tuple[int, ...] = ()
    d: tuple[int, ...] = ()
    d_prime: tuple[int, ...] = ()
    d_prime_0: tuple[int, ...] = ()
    d_prime_1: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "C": list(self.c),
            "D": list(self.d),
            "D_prime": list(self.d_prime),
            "D_prime_0": list(self.d_prime_0),
            "D_prime_1": list(self.d_prime_1),
        }

    @classmethod
    def from_json(cls, data: dict) -> IndexClasses:
        return cls(
            tuple(data["C"]),
            tuple(data["D"]),
            tuple(data["D_prime"]),
            tuple(data["D_prime_0"]),
            tuple(data["D_prime_1"]),
        )


@dataclass(frozen=True)
class ChosenPoints:
    k: int
    y: Scalar | None = None
    z: Scalar | None = None
    u: Scalar | None = None
    v: Scalar | None = None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "y": _scalar_or_none(self.y),
            "z": _scalar_or_none(self.z),
            "u": _scalar_or_none(self.u),
            "v": _scalar_or_none(self.v),
        }

    @classmethod
    def from_json(cls, data: dict) -> ChosenPoints:
        return cls(
            data["k"],
            _parse_or_none(data.get("y")),
            _parse_or_none(data.get("z")),
            _parse_or_none(data.get("u")),
            _parse_or_none(data.get("v")),
        )


@dataclass(frozen=True)
class LedgerEntry:
    """E_q = (sup(f, [q', q]) - f(q))(q - q')."""

    point: Scalar
    predecessor: Scalar
    sup: Scalar
    value: Scalar
    contribution: Scalar
    group: int

    def to_json(self) -> dict:
        return {
            "q": format_scalar(self.point),
            "q_prev": format_scalar(self.predecessor),
            "sup": format_scalar(self.sup),
            "f_q": format_scalar(self.value),
            "E_q": format_scalar(self.contribution),
            "group": GROUP_NAMES[self.group],
        }

    @classmethod
    def from_json(cls, data: dict) -> LedgerEntry:
        return cls(
            parse_scalar(data["q"]),
            parse_scalar(data["q_prev"]),
            parse_scalar(data["sup"]),
            parse_scalar(data["f_q"]),
            parse_scalar(data["E_q"]),
            GROUP_NAMES.index(data["group"]),
        )


@dataclass(frozen=True)
class LemmaCertificate:
    """Transcript of a construction of Q with U(f, Q) - R(f, Q, re) < epsilon.

    `function` describes the function the caller passed; when `negated` is
    set the construction ran on its negation (a corollary certificate).
    The deltas are None when f is constant.
    """

    function: dict
    negated: bool
    epsilon_public: Fraction
    epsilon_internal: Fraction
    range_bound: Fraction
    delta1: Fraction | None
    delta2: Fraction | None
    delta: Fraction | None
    seed: Partition
    g_values: tuple[Scalar, ...]
    classes: IndexClasses
    chosen_points: tuple[ChosenPoints, ...]
    groups: tuple[tuple[Scalar, ...], ...]
    partition: Partition
    ledger: tuple[LedgerEntry, ...]
    group_sums: tuple[Scalar, ...]
    total_gap: Scalar
    upper_sum: Scalar
    right_sum: Scalar
    schema_version: int = field(default=SCHEMA_VERSION)

    def chosen(self, k: int) -> ChosenPoints:
        """Chosen points of index k.

        Raises:
            KeyError

        """
        for points in self.chosen_points:
            if points.k == k:
                return points

        raise KeyError(k)

    def to_json(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "function": self.function,
            "negated": self.negated,
            "epsilon_public": str(self.epsilon_public),
            "epsilon_internal": str(self.epsilon_internal),
            "B": str(self.range_bound),
            "delta1": _scalar_or_none(self.delta1),
            "delta2": _scalar_or_none(self.delta2),
            "delta": _scalar_or_none(self.delta),
            "P": self.seed.to_json(),
            "g_values": [format_scalar(value) for value in self.g_values],
            "classes": self.classes.to_json(),
            "chosen_points": [points.to_json() for points in self.chosen_points],
            "groups": {
                name: [format_scalar(point) for point in group]
                for name, group in zip(GROUP_NAMES, self.groups)
            },
            "Q": self.partition.to_json(),
            "ledger": [entry.to_json() for entry in self.ledger],
            "group_sums": {
                name: format_scalar(total)
                for name, total in zip(GROUP_NAMES, self.group_sums)
            },
            "total_gap": format_scalar(self.total_gap),
            "upper_sum": format_scalar(self.upper_sum),
            "right_sum": format_scalar(self.right_sum),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> LemmaCertificate:
        """Decode a certificate.

        Raises:
            CertificateCorruptionError

        """
        if not isinstance(data, dict):
            raise CertificateCorruptionError("certificate", type(data).__name__, "object")

        version = data.get("schema_version")

        if version != SCHEMA_VERSION:
            raise CertificateCorruptionError("schema_version", version, SCHEMA_VERSION)

        try:
            return cls(
                function=data["function"],
                negated=bool(data["negated"]),
                epsilon_public=parse_rational(data["epsilon_public"]),
                epsilon_internal=parse_rational(data["epsilon_internal"]),
                range_bound=parse_rational(data["B"]),
                delta1=_parse_or_none(data["delta1"]),
                delta2=_parse_or_none(data["delta2"]),
                delta=_parse_or_none(data["delta"]),
                seed=Partition.from_json(data["P"]),
                g_values=tuple(parse_scalar(value) for value in data["g_values"]),
                classes=IndexClasses.from_json(data["classes"]),
                chosen_points=tuple(
                    ChosenPoints.from_json(points) for points in data["chosen_points"]
                ),
                groups=tuple(
                    tuple(parse_scalar(point) for point in data["groups"][name])
                    for name in GROUP_NAMES
                ),
                partition=Partition.from_json(data["Q"]),
                ledger=tuple(LedgerEntry.from_json(entry) for entry in data["ledger"]),
                group_sums=tuple(
                    parse_scalar(data["group_sums"][name]) for name in GROUP_NAMES
                ),
                total_gap=parse_scalar(data["total_gap"]),
                upper_sum=parse_scalar(data["upper_sum"]),
                right_sum=parse_scalar(data["right_sum"]),
            )
        except KeyError as exc:
            raise CertificateCorruptionError(str(exc.args[0]), "missing", "present") from exc
        except (LabError, TypeError, ValueError) as exc:
            raise CertificateCorruptionError("format", exc, "valid certificate") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> LemmaCertificate:
        """Decode a JSON certificate.

        Raises:
            CertificateCorruptionError

        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateCorruptionError("json", exc, "valid JSON") from exc

        return cls.from_json(data)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    """Outcome of verifying a certificate whose recomputation matched.

    `gate` is total_gap < epsilon_public. `constraints` are the inequalities
    the construction guarantees for each chosen point and `diagnostics` the
    per-group bounds, which are reported but do not decide `passed`.
    """

    gate: Check
    constraints: list[Check] = field(default_factory=list)
    diagnostics: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.gate.passed and all(check.passed for check in self.constraints)

    @property
    def failures(self) -> list[Check]:
        return [
            check
            for check in (self.gate, *self.constraints, *self.diagnostics)
            if not check.passed
        ]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "gate": self.gate.to_json(),
            "constraints": [check.to_json() for check in self.constraints],
            "diagnostics": [check.to_json() for check in self.diagnostics],
        }
