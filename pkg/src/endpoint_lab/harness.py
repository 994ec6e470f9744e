"""Experiments built on the partition engine.

Each experiment returns an `ExperimentReport` whose gates are exact
inequalities; convergence is never asserted, only tabulated.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math
from typing import Any

from .certificate import LemmaCertificate
from .dsl import to_dsl
from .engine import LemmaEngine
from .errors import DomainError
from .models import DirichletIndicator, FunctionModel
from .numeric import BoundedApprox, Scalar, format_scalar, sqrt_approx, surd
from .partition import (
    Partition,
    RightEndpoint,
    SampleRule,
    concatenate,
    darboux_gap_probe,
    lower_darboux,
    mesh,
    riemann_sum,
    right_sum,
    uniform_partition,
    upper_darboux,
)
from .reports import ExperimentReport

_LOGGER = logging.getLogger(__name__)

DEFAULT_SEED_DOUBLINGS = 12
DEFAULT_PROBE_DEPTH = 10
DEFAULT_SQRT_ERROR = Fraction(1, 10**6)
JITTER_STEPS = 3


def _approx_json(value: BoundedApprox) -> dict[str, str]:
    return {"value": str(value.value), "error_bound": str(value.error_bound)}


def _jittered_family(
    a: Fraction, b: Fraction, n: int, *, irrational: bool = False
) -> list[Partition]:
    """The uniform partition with n pieces and copies with shifted interior points.

    Shifts are j(b - a)/(3n) for j = 1, 2. With `irrational` set the family
    also holds the refinement adding x + (sqrt 2 - 1)(b - a)/n to every cell
    [x, x + (b - a)/n].
    """
    base = uniform_partition(a, b, n)
    step = (b - a) / (JITTER_STEPS * n)
    family = [base] + [
        Partition((a, *(x + j * step for x in base.points[1:-1]), b))
        for j in range(1, JITTER_STEPS)
    ]

    if irrational:
        offset = surd(-1, 1) * (b - a) / n
        family.append(Partition.from_points([*base, *(x + offset for x in base.points[:-1])]))

    return family


@dataclass
class TheoremReport(ExperimentReport):
    """Stitched partitions Q^U and Q^L over a seed chosen from right sums.

    The per-side gaps U(f, Q^U) - R(f, Q^U, re) and R(f, Q^L, re) - L(f, Q^L)
    are gated separately; U(f, Q^U) - L(f, Q^L) is derived from them and the
    distance between the two right sums.
    """

    function: dict
    epsilon: Fraction
    requested_n: int
    seed: Partition
    reference: Scalar
    seed_sums: list[Scalar] = field(default_factory=list)
    upper_certificates: list[LemmaCertificate] = field(default_factory=list)
    lower_certificates: list[LemmaCertificate] = field(default_factory=list)
    stitched_upper: Partition | None = None
    stitched_lower: Partition | None = None
    upper_sum: Scalar = Fraction(0)
    upper_right_sum: Scalar = Fraction(0)
    lower_right_sum: Scalar = Fraction(0)
    lower_sum: Scalar = Fraction(0)
    stitching_identity: bool = False

    experiment = "theorem"

    @property
    def effective_n(self) -> int:
        return self.seed.n

    @property
    def seed_deviation(self) -> Scalar:
        return max(abs(value - self.reference) for value in self.seed_sums)

    @property
    def upper_gap(self) -> Scalar:
        return self.upper_sum - self.upper_right_sum

    @property
    def lower_gap(self) -> Scalar:
        return self.lower_right_sum - self.lower_sum

    @property
    def final_gap(self) -> Scalar:
        return self.upper_sum - self.lower_sum

    def inputs(self) -> dict[str, Any]:
        return {
            "function": self.function,
            "epsilon": str(self.epsilon),
            "n": self.requested_n,
        }

    def outputs(self) -> dict[str, Any]:
        return {
            "effective_n": self.effective_n,
            "P": self.seed.to_json(),
            "reference": format_scalar(self.reference),
            "seed_sums": [format_scalar(value) for value in self.seed_sums],
            "seed_deviation": format_scalar(self.seed_deviation),
            "Q_U": self.stitched_upper.to_json() if self.stitched_upper else None,
            "Q_L": self.stitched_lower.to_json() if self.stitched_lower else None,
            "U(f,Q_U)": format_scalar(self.upper_sum),
            "R(f,Q_U,re)": format_scalar(self.upper_right_sum),
            "R(f,Q_L,re)": format_scalar(self.lower_right_sum),
            "L(f,Q_L)": format_scalar(self.lower_sum),
            "final_gap": format_scalar(self.final_gap),
            "certificates_U": [cert.to_json() for cert in self.upper_certificates],
            "certificates_L": [cert.to_json() for cert in self.lower_certificates],
        }

    def gates(self) -> dict[str, bool]:
        return {
            "seed right sums within epsilon": self.seed_deviation < self.epsilon,
            "U(f,Q_U) - R(f,Q_U,re) < epsilon": self.upper_gap < self.epsilon,
            "R(f,Q_L,re) - L(f,Q_L) < epsilon": self.lower_gap < self.epsilon,
            "final_gap < 4*epsilon": self.final_gap < 4 * self.epsilon,
            "stitching_identity": self.stitching_identity,
        }

    def rows(self) -> list[dict[str, Any]]:
        return [
            {
                "k": k,
                "lo": format_scalar(upper.seed.lo),
                "hi": format_scalar(upper.seed.hi),
                "U_k": format_scalar(upper.upper_sum),
                "upper_gap_k": format_scalar(upper.total_gap),
                "lower_gap_k": format_scalar(lower.total_gap),
            }
            for k, (upper, lower) in enumerate(
                zip(self.upper_certificates, self.lower_certificates), start=1
            )
        ]


@dataclass
class ProbeReport(ExperimentReport):
    """Right-endpoint sums over uniform and shifted partitions per mesh bound."""

    function: dict
    mesh_schedule: list[Fraction]
    sums: list[list[Scalar]] = field(default_factory=list)
    meshes: list[list[Scalar]] = field(default_factory=list)

    experiment = "probe"

    def spread(self, index: int) -> Scalar:
        return max(self.sums[index]) - min(self.sums[index])

    def inputs(self) -> dict[str, Any]:
        return {
            "function": self.function,
            "mesh_schedule": [str(bound) for bound in self.mesh_schedule],
        }

    def outputs(self) -> dict[str, Any]:
        return {
            "rows": self.rows(),
        }

    def gates(self) -> dict[str, bool]:
        return {
            "meshes within bounds": all(
                max(meshes) <= bound for bound, meshes in zip(self.mesh_schedule, self.meshes)
            )
        }

    def rows(self) -> list[dict[str, Any]]:
        return [
            {
                "mesh_bound": str(bound),
                "min": format_scalar(min(sums)),
                "max": format_scalar(max(sums)),
                "spread": format_scalar(self.spread(index)),
                "sums": " ".join(format_scalar(value) for value in sums),
            }
            for index, (bound, sums) in enumerate(zip(self.mesh_schedule, self.sums))
        ]


@dataclass
class CounterexampleReport(ExperimentReport):
    """Uniform right sums of the Dirichlet indicator against its Darboux gap."""

    n_values: list[int]
    right_sums: list[Scalar] = field(default_factory=list)
    darboux_gaps: list[Scalar] = field(default_factory=list)

    experiment = "counterexample"

    def inputs(self) -> dict[str, Any]:
        return {"function": "dirichlet(1, 0) on [0, 1]", "n_values": self.n_values}

    def outputs(self) -> dict[str, Any]:
        return {"rows": self.rows()}

    def gates(self) -> dict[str, bool]:
        return {
            "right sums equal 1": all(value == 1 for value in self.right_sums),
            "U - L equals 1": all(gap == 1 for gap in self.darboux_gaps),
        }

    def rows(self) -> list[dict[str, Any]]:
        return [
            {"n": n, "right_sum": format_scalar(value), "U-L": format_scalar(gap)}
            for n, value, gap in zip(self.n_values, self.right_sums, self.darboux_gaps)
        ]


@dataclass
class UnboundedDemoReport(ExperimentReport):
    """Right sums of x^(-1/2) on [0, 1] and the integrals over [c, 1]."""

    c_values: list[Fraction]
    n_values: list[int]
    error_bound: Fraction
    sums: list[BoundedApprox] = field(default_factory=list)
    rechecks: list[BoundedApprox] = field(default_factory=list)
    integrals: list[BoundedApprox] = field(default_factory=list)

    experiment = "unbounded"

    @property
    def sum_residuals(self) -> list[BoundedApprox]:
        return [2 - value for value in self.sums]

    @property
    def integral_residuals(self) -> list[BoundedApprox]:
        return [2 - value for value in self.integrals]

    def inputs(self) -> dict[str, Any]:
        return {
            "c_values": [str(c) for c in self.c_values],
            "n_values": self.n_values,
            "error_bound": str(self.error_bound),
        }

    def outputs(self) -> dict[str, Any]:
        return {
            "sums": [_approx_json(value) for value in self.sums],
            "sum_residuals": [_approx_json(value) for value in self.sum_residuals],
            "integrals": [_approx_json(value) for value in self.integrals],
            "integral_residuals": [
                _approx_json(value) for value in self.integral_residuals
            ],
        }

    def gates(self) -> dict[str, bool]:
        residuals = self.sum_residuals
        return {
            "residuals decrease": all(
                later.upper < earlier.lower
                for earlier, later in zip(residuals, residuals[1:])
            ),
            "error bounds bracket recheck": all(
                abs(value.value - recheck.value)
                <= value.error_bound + recheck.error_bound
                for value, recheck in zip(self.sums, self.rechecks)
            ),
        }

    def rows(self) -> list[dict[str, Any]]:
        rows = [
            {
                "kind": "right_sum",
                "parameter": str(n),
                "value": str(value.value),
                "error_bound": str(value.error_bound),
                "residual": str(residual.value),
            }
            for n, value, residual in zip(self.n_values, self.sums, self.sum_residuals)
        ]
        rows.extend(
            {
                "kind": "integral",
                "parameter": str(c),
                "value": str(value.value),
                "error_bound": str(value.error_bound),
                "residual": str(residual.value),
            }
            for c, value, residual in zip(
                self.c_values, self.integrals, self.integral_residuals
            )
        )
        return rows


@dataclass
class PsiExperiment(ExperimentReport):
    """Sums under a sample rule on uniform partitions against Darboux brackets."""

    function: dict
    rule: SampleRule
    n_values: list[int]
    depth: int
    sums: list[Scalar] = field(default_factory=list)
    brackets: list[tuple[Scalar, Scalar]] = field(default_factory=list)
    reference_bracket: tuple[Scalar, Scalar] = (Fraction(0), Fraction(0))

    experiment = "psi"

    @property
    def reference(self) -> Scalar:
        upper, lower = self.reference_bracket
        return (upper + lower) / 2

    @property
    def residuals(self) -> list[Scalar]:
        return [value - self.reference for value in self.sums]

    def inputs(self) -> dict[str, Any]:
        return {
            "function": self.function,
            "rule": str(self.rule),
            "n_values": self.n_values,
            "depth": self.depth,
        }

    def outputs(self) -> dict[str, Any]:
        upper, lower = self.reference_bracket
        return {
            "rows": self.rows(),
            "reference": format_scalar(self.reference),
            "reference_bracket": [format_scalar(lower), format_scalar(upper)],
        }

    def gates(self) -> dict[str, bool]:
        return {
            "sums within [L, U]": all(
                lower <= value <= upper
                for value, (upper, lower) in zip(self.sums, self.brackets)
            )
        }

    def rows(self) -> list[dict[str, Any]]:
        return [
            {
                "n": n,
                "sum": format_scalar(value),
                "L": format_scalar(lower),
                "U": format_scalar(upper),
                "residual": format_scalar(residual),
            }
            for n, value, (upper, lower), residual in zip(
                self.n_values, self.sums, self.brackets, self.residuals
            )
        ]


class ExperimentHarness:
    def __init__(
        self,
        engine: LemmaEngine | None = None,
        *,
        seed_doublings: int = DEFAULT_SEED_DOUBLINGS,
        probe_depth: int = DEFAULT_PROBE_DEPTH,
        sqrt_error: Fraction = DEFAULT_SQRT_ERROR,
        logger: logging.Logger = _LOGGER,
    ) -> None:
        self.engine = engine or LemmaEngine(logger=logger)
        self.seed_doublings = seed_doublings
        self.probe_depth = probe_depth
        self.sqrt_error = sqrt_error
        self.logger = logger

    def theorem_check(self, f: FunctionModel, epsilon: Fraction, n: int) -> TheoremReport:
        """Stitch per-piece lemma and corollary partitions over a uniform seed.

        The seed starts at n pieces and doubles, at most `seed_doublings`
        times, until the right sums of its jittered family (one member with
        irrational points) all lie within epsilon of the right sum on a finer
        uniform reference partition.

        Raises:
            DomainError
            FunctionDomainError
            OracleDefectError

        """
        if epsilon <= 0:
            raise DomainError("epsilon must be positive")

        if n < 1:
            raise DomainError(f"n must be positive, got {n}")

        a, b = f.domain
        reference = right_sum(f, uniform_partition(a, b, n * 2 ** (self.seed_doublings + 1)))
        report = TheoremReport(to_dsl(f), epsilon, n, uniform_partition(a, b, n), reference)

        for doubling in range(self.seed_doublings + 1):
            if doubling:
                report.seed = uniform_partition(a, b, 2 * report.seed.n)
            family = _jittered_family(a, b, report.seed.n, irrational=True)
            report.seed_sums = [right_sum(f, partition) for partition in family]
            if report.seed_deviation < epsilon:
                break

        seed = report.seed
        self.logger.debug("%s: %s => %s", "theorem", f"seed n={n}", seed.n)

        if not report.seed_deviation < epsilon:
            self.logger.warning(
                "Right sums on %d pieces stay %s away from %s",
                seed.n,
                format_scalar(report.seed_deviation),
                format_scalar(reference),
            )
            report.stitched_upper = report.stitched_lower = seed
            report.upper_sum = upper_darboux(f, seed)
            report.lower_sum = lower_darboux(f, seed)
            report.upper_right_sum = report.lower_right_sum = right_sum(f, seed)
            return report

        piece_epsilon = epsilon / seed.n

        for lo, hi in seed.intervals():
            piece = f.restrict(lo, hi)
            report.upper_certificates.append(self.engine.construct(piece, piece_epsilon)[1])
            report.lower_certificates.append(
                self.engine.construct_corollary(piece, piece_epsilon)[1]
            )

        report.stitched_upper = concatenate(
            [cert.partition for cert in report.upper_certificates]
        )
        report.stitched_lower = concatenate(
            [cert.partition for cert in report.lower_certificates]
        )
        report.upper_sum = upper_darboux(f, report.stitched_upper)
        report.upper_right_sum = right_sum(f, report.stitched_upper)
        report.lower_right_sum = right_sum(f, report.stitched_lower)
        report.lower_sum = lower_darboux(f, report.stitched_lower)
        report.stitching_identity = report.upper_sum == sum(
            (cert.upper_sum for cert in report.upper_certificates), Fraction(0)
        ) and report.lower_sum == -sum(
            (cert.upper_sum for cert in report.lower_certificates), Fraction(0)
        )
        self.logger.info(
            "Theorem check: gap %s < %s is %s",
            format_scalar(report.final_gap),
            4 * epsilon,
            report.final_gap < 4 * epsilon,
        )
        return report

    def right_endpoint_limit_probe(
        self, f: FunctionModel, mesh_schedule: Sequence[Fraction]
    ) -> ProbeReport:
        """Right sums over a deterministic family of partitions per mesh bound.

        For a bound h the family is the uniform partition with
        n = ceil(2(b - a)/h) pieces and its interior points shifted right by
        j(b - a)/(3n) for j = 1, 2.

        Raises:
            DomainError

        """
        schedule = [Fraction(bound) for bound in mesh_schedule]

        if not schedule or any(bound <= 0 for bound in schedule):
            raise DomainError("Mesh bounds must be positive")

        if any(later >= earlier for earlier, later in zip(schedule, schedule[1:])):
            raise DomainError("Mesh schedule must be strictly decreasing")

        a, b = f.domain
        report = ProbeReport(to_dsl(f), schedule)

        for bound in schedule:
            n = math.ceil(2 * (b - a) / bound)
            family = _jittered_family(a, b, n)
            report.sums.append([right_sum(f, partition) for partition in family])
            report.meshes.append([mesh(partition) for partition in family])
            self.logger.debug("%s: %s => %s", "probe", bound, report.sums[-1])

        return report

    def regular_endpoint_counterexample(self, n_values: Sequence[int]) -> CounterexampleReport:
        """Raises:
            PartitionError

        """
        f = DirichletIndicator(Fraction(1), Fraction(0))
        report = CounterexampleReport(list(n_values))

        for n in n_values:
            partition = uniform_partition(Fraction(0), Fraction(1), n)
            report.right_sums.append(right_sum(f, partition))
            report.darboux_gaps.append(upper_darboux(f, partition) - lower_darboux(f, partition))

        return report

    def unbounded_demo(
        self, c_values: Sequence[Fraction], n_values: Sequence[int]
    ) -> UnboundedDemoReport:
        """x^(-1/2) on (0, 1] (0 at 0): right sums and integrals over [c, 1].

        Every value carries an error bound; each sum is recomputed with a
        thousand times smaller bound to cross-check it.

        Raises:
            DomainError

        """
        c_values = [Fraction(c) for c in c_values]

        if any(not 0 < c < 1 for c in c_values):
            raise DomainError("c must lie in (0, 1)")

        report = UnboundedDemoReport(c_values, list(n_values), self.sqrt_error)

        for n in n_values:
            report.sums.append(self._inverse_sqrt_sum(n, self.sqrt_error))
            report.rechecks.append(self._inverse_sqrt_sum(n, self.sqrt_error / 1000))

        for c in c_values:
            report.integrals.append(2 - 2 * sqrt_approx(c, self.sqrt_error / 2))

        return report

    @staticmethod
    def _inverse_sqrt_sum(n: int, error_bound: Fraction) -> BoundedApprox:
        # R_n = sum of (1/n) * sqrt(n/k); each root within error_bound
        if n < 1:
            raise DomainError(f"n must be positive, got {n}")

        total = BoundedApprox(Fraction(0))

        for k in range(1, n + 1):
            total = total + sqrt_approx(Fraction(n, k), error_bound)

        return total * BoundedApprox(Fraction(1, n))

    def psi_experiment(
        self,
        f: FunctionModel,
        rule: SampleRule,
        n_values: Sequence[int],
    ) -> PsiExperiment:
        """Raises:
            RuleViolationError

        """
        a, b = f.domain
        report = PsiExperiment(
            to_dsl(f), rule, list(n_values), self.probe_depth
        )

        for n in n_values:
            partition = uniform_partition(a, b, n)
            report.sums.append(riemann_sum(f, partition, rule))
            report.brackets.append((upper_darboux(f, partition), lower_darboux(f, partition)))

        report.reference_bracket = darboux_gap_probe(f, self.probe_depth)[-1]
        return report


def theorem_check(f: FunctionModel, epsilon: Fraction, n: int) -> TheoremReport:
    return ExperimentHarness().theorem_check(f, epsilon, n)


def right_endpoint_limit_probe(
    f: FunctionModel, mesh_schedule: Sequence[Fraction]
) -> ProbeReport:
    return ExperimentHarness().right_endpoint_limit_probe(f, mesh_schedule)


def regular_endpoint_counterexample(n_values: Sequence[int]) -> CounterexampleReport:
    return ExperimentHarness().regular_endpoint_counterexample(n_values)


def unbounded_demo(c_values: Sequence[Fraction], n_values: Sequence[int]) -> UnboundedDemoReport:
    return ExperimentHarness().unbounded_demo(c_values, n_values)


def psi_experiment(
    f: FunctionModel, rule: SampleRule | None, n_values: Sequence[int]
) -> PsiExperiment:
    return ExperimentHarness().psi_experiment(f, rule or RightEndpoint(), n_values)
