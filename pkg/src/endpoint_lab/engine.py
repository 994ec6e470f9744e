"""Partition construction for U(f, Q) - R(f, Q, re) < epsilon.

The construction runs at an internal epsilon' = epsilon / 6:

1. B = sup f - inf f on [a, b]; a constant f gives Q = {a, b}.
2. delta = epsilon' / B and a uniform seed P = {x_k} with mesh < delta / 2.
3. g = running sup of f. Index k is in C if g(x_{k-1}) = g(x_k), else in D;
   D' holds the k in D (k < n) whose successor is in C.
4. For k in D', z_k is the left edge of the level g(x_k) in [x_{k-1}, x_k];
   k is in D'_0 if g(z_k) = g(x_k) and in D'_1 otherwise.
5. y_k nearly attains g(x_{k-1}) left of z_k (or of x_k); u_k nearly
   matches g just left of z_k (D'_0); v_k sits just right of z_k (D'_1).
6. Q is the union of the groups
   Q0 = {a, b},
   Q1 = {y_k : k in D, k - 1 not in D},
   Q2 = {z_k : k in D'_0} + {v_k : k in D'_1},
   Q3 = {z_k : k in D'_1, z_k != y_k} + {u_k : k in D'_0} + {y_k : k, k - 1 in D}.
"""

from __future__ import annotations

from fractions import Fraction
import logging
import math
from typing import Any

from .certificate import (
    ChosenPoints,
    Check,
    IndexClasses,
    LedgerEntry,
    LemmaCertificate,
    VerificationReport,
)
from .dsl import to_dsl
from .errors import CertificateCorruptionError, DomainError
from .event import Event
from .interval import SubInterval
from .models import DEFAULT_SEARCH_BUDGET, FunctionModel, Negate, near_g_match_point
from .numeric import Scalar, format_scalar
from .partition import Partition, mesh, right_sum, uniform_partition, upper_darboux
from .profile import MonotoneProfile, level_left_edge

_LOGGER = logging.getLogger(__name__)

EPSILON_SPLIT = 6
DEFAULT_DIAGNOSTIC_MARGIN = Fraction(1, 100)


def classify(g_values: tuple[Scalar, ...]) -> tuple[tuple[int, ...], ...]:
    """(C, D, D') from the g-values at the seed points."""
    n = len(g_values) - 1
    c = tuple(k for k in range(1, n + 1) if g_values[k - 1] == g_values[k])
    d = tuple(k for k in range(1, n + 1) if g_values[k - 1] > g_values[k])
    d_set = set(d)
    d_prime = tuple(k for k in d if k != n and k + 1 not in d_set)
    return c, d, d_prime


def assemble_groups(
    classes: IndexClasses,
    chosen: dict[int, ChosenPoints],
    a: Scalar,
    b: Scalar,
) -> tuple[tuple[Scalar, ...], ...]:
    """Sorted Q0..Q3 from the classes and chosen points."""
    d_set = set(classes.d)
    q1 = {chosen[k].y for k in classes.d if k - 1 not in d_set}
    q2 = {chosen[k].z for k in classes.d_prime_0} | {
        chosen[k].v for k in classes.d_prime_1
    }
    q3 = (
        {chosen[k].z for k in classes.d_prime_1 if chosen[k].z != chosen[k].y}
        | {chosen[k].u for k in classes.d_prime_0}
        | {chosen[k].y for k in classes.d if k - 1 in d_set}
    )
    return tuple(tuple(sorted(group)) for group in ({a, b}, q1, q2, q3))


def compute_ledger(
    f: FunctionModel,
    partition: Partition,
    groups: tuple[tuple[Scalar, ...], ...],
) -> tuple[LedgerEntry, ...]:
    """E_q for every q of Q after a, each attributed to its lowest group."""
    members = [set(group) for group in groups]
    entries = []

    for predecessor, point in partition.intervals():
        sup = f.sup_on(SubInterval(predecessor, point))
        value = f.evaluate(point)
        group = next(index for index, group in enumerate(members) if point in group)
        entries.append(
            LedgerEntry(
                point, predecessor, sup, value, (sup - value) * (point - predecessor), group
            )
        )

    return tuple(entries)


def sum_groups(ledger: tuple[LedgerEntry, ...]) -> tuple[Scalar, ...]:
    sums: list[Scalar] = [Fraction(0)] * 4

    for entry in ledger:
        sums[entry.group] += entry.contribution

    return tuple(sums)


def seed_size(a: Fraction, b: Fraction, delta: Fraction) -> int:
    """Smallest uniform n with mesh < delta / 2 plus one."""
    return math.ceil(2 * (b - a) / delta) + 1


class LemmaEngine:
    """Builds partitions and certificates, and verifies certificates.

    Phases are published on `on_phase` as (phase, details) pairs.
    """

    def __init__(
        self,
        *,
        budget: int = DEFAULT_SEARCH_BUDGET,
        margin: Fraction = DEFAULT_DIAGNOSTIC_MARGIN,
        logger: logging.Logger = _LOGGER,
    ) -> None:
        self.budget = budget
        self.margin = margin
        self.logger = logger
        self.on_phase = Event()

    def _phase(self, name: str, **details: Any) -> None:
        self.logger.debug("%s: %s => %s", "lemma", name, details)
        self.on_phase.notify(name, details)

    def construct(
        self,
        f: FunctionModel,
        epsilon: Fraction,
        *,
        negated: bool = False,
        source: FunctionModel | None = None,
    ) -> tuple[Partition, LemmaCertificate]:
        """Partition Q of f's domain with U(f, Q) - R(f, Q, re) < epsilon.

        `source` is the function recorded in the certificate, f itself
        unless f is the negation built for a corollary.

        Raises:
            DomainError
            OracleDefectError

        """
        if epsilon <= 0:
            raise DomainError("epsilon must be positive")

        a, b = f.domain
        whole = SubInterval(a, b)
        eps = epsilon / EPSILON_SPLIT
        bound = f.sup_on(whole) - f.inf_on(whole)
        self._phase("bound", B=bound)

        if bound == 0:
            delta1 = delta2 = delta = None
            seed = Partition((a, b))
        else:
            delta1 = delta2 = eps / bound
            delta = min(delta1, delta2)
            seed = uniform_partition(a, b, seed_size(a, b, delta))

        x = seed.points
        n = seed.n
        self._phase("seed", n=n, delta=delta)

        g = f.running_sup()
        g_values = tuple(g(point) for point in x)
        c, d, d_prime = classify(g_values)

        edges = {
            k: level_left_edge(g, SubInterval(x[k - 1], x[k]), g_values[k])
            for k in d_prime
        }
        d_prime_0 = tuple(k for k in d_prime if g(edges[k]) == g_values[k])
        d_prime_1 = tuple(k for k in d_prime if g(edges[k]) != g_values[k])
        classes = IndexClasses(c, d, d_prime, d_prime_0, d_prime_1)
        self._phase("classes", C=len(c), D=len(d), D_prime=len(d_prime))

        chosen = self._choose_points(f, g, x, g_values, classes, edges, eps, bound)
        groups = assemble_groups(classes, chosen, a, b)
        partition = Partition.from_points([point for group in groups for point in group])
        self._phase("groups", sizes=[len(group) for group in groups], Q=partition.n)

        ledger = compute_ledger(f, partition, groups)
        total_gap = sum((entry.contribution for entry in ledger), Fraction(0))
        self._phase("ledger", total_gap=format_scalar(total_gap))

        certificate = LemmaCertificate(
            function=to_dsl(source or f),
            negated=negated,
            epsilon_public=epsilon,
            epsilon_internal=eps,
            range_bound=bound,
            delta1=delta1,
            delta2=delta2,
            delta=delta,
            seed=seed,
            g_values=g_values,
            classes=classes,
            chosen_points=tuple(chosen[k] for k in sorted(chosen)),
            groups=groups,
            partition=partition,
            ledger=ledger,
            group_sums=sum_groups(ledger),
            total_gap=total_gap,
            upper_sum=upper_darboux(f, partition),
            right_sum=right_sum(f, partition),
        )
        self.logger.info(
            "Built Q with %d points, gap %s < %s",
            len(partition),
            format_scalar(total_gap),
            epsilon,
        )
        return partition, certificate

    def _choose_points(
        self,
        f: FunctionModel,
        g: MonotoneProfile,
        x: tuple[Scalar, ...],
        g_values: tuple[Scalar, ...],
        classes: IndexClasses,
        edges: dict[int, Scalar],
        eps: Fraction,
        bound: Fraction,
    ) -> dict[int, ChosenPoints]:
        a, b = f.domain
        eta = eps / (b - a)
        zero_set, one_set = set(classes.d_prime_0), set(classes.d_prime_1)
        radius = eps / (bound * len(classes.d_prime)) if classes.d_prime else None
        chosen = {}

        for k in classes.d:
            z = edges.get(k)

            if k in zero_set:
                window = SubInterval(x[k - 1], z, hi_closed=False)
            elif k in one_set:
                window = SubInterval(x[k - 1], z)
            else:
                window = SubInterval(x[k - 1], x[k], hi_closed=False)

            y = f.near_max_point(window, g_values[k - 1], eta, self.budget)
            u = v = None

            if k in zero_set:
                u = near_g_match_point(
                    f, g, SubInterval(max(y, z - radius), z, False, False), eta, self.budget
                )
            elif k in one_set:
                v = (z + min(x[k], z + radius)) / 2

            chosen[k] = ChosenPoints(k, y, z, u, v)

        self._phase("points", chosen=len(chosen))
        return chosen

    def construct_corollary(
        self, f: FunctionModel, epsilon: Fraction
    ) -> tuple[Partition, LemmaCertificate]:
        """Partition Q with R(f, Q, re) - L(f, Q) < epsilon, built on -f.

        Raises:
            DomainError
            OracleDefectError

        """
        return self.construct(Negate(f), epsilon, negated=True, source=f)

    def verify(self, f: FunctionModel, certificate: LemmaCertificate) -> VerificationReport:
        """Recompute the certificate for f and check its inequalities.

        Raises:
            CertificateCorruptionError

        """
        _match("function", certificate.function, to_dsl(f))
        model = Negate(f) if certificate.negated else f
        a, b = model.domain
        whole = SubInterval(a, b)
        epsilon = certificate.epsilon_public
        eps = certificate.epsilon_internal
        constraints = [
            Check(
                "epsilon_split",
                eps * EPSILON_SPLIT == epsilon,
                f"{eps} * {EPSILON_SPLIT} vs {epsilon}",
            )
        ]

        bound = model.sup_on(whole) - model.inf_on(whole)
        _match("B", certificate.range_bound, bound)

        if bound == 0:
            delta1 = delta2 = delta = None
            seed = Partition((a, b))
        else:
            delta1 = delta2 = eps / bound
            delta = min(delta1, delta2)
            seed = uniform_partition(a, b, seed_size(a, b, delta))
            constraints.append(
                Check("mesh", mesh(seed) < delta / 2, f"{mesh(seed)} < {delta / 2}")
            )

        _match("delta1", certificate.delta1, delta1)
        _match("delta2", certificate.delta2, delta2)
        _match("delta", certificate.delta, delta)
        _match("P", certificate.seed, seed)

        x = seed.points
        g_values = tuple(model.sup_on(SubInterval(point, b)) for point in x)
        _match("g_values", certificate.g_values, g_values)

        c, d, d_prime = classify(g_values)
        g = model.running_sup()
        edges = {
            k: level_left_edge(g, SubInterval(x[k - 1], x[k]), g_values[k])
            for k in d_prime
        }

        def running(point: Scalar) -> Scalar:
            return model.sup_on(SubInterval(point, b))

        d_prime_0 = tuple(k for k in d_prime if running(edges[k]) == g_values[k])
        d_prime_1 = tuple(k for k in d_prime if running(edges[k]) != g_values[k])
        classes = IndexClasses(c, d, d_prime, d_prime_0, d_prime_1)
        _match("classes", certificate.classes, classes)

        chosen = {points.k: points for points in certificate.chosen_points}
        _match("chosen_points.indices", sorted(chosen), list(d))

        for k in d:
            _match(f"chosen_points[{k}].z", chosen[k].z, edges.get(k))

        constraints.extend(
            self._point_checks(model, x, g_values, classes, chosen, eps, bound)
        )

        groups = assemble_groups(classes, chosen, a, b)
        _match("groups", certificate.groups, groups)

        partition = Partition.from_points([point for group in groups for point in group])
        _match("Q", certificate.partition, partition)

        ledger = compute_ledger(model, partition, groups)
        for index, (stored, recomputed) in enumerate(zip(certificate.ledger, ledger)):
            _match(f"ledger[{index}]", stored, recomputed)
        _match("ledger.length", len(certificate.ledger), len(ledger))

        group_sums = sum_groups(ledger)
        _match("group_sums", certificate.group_sums, group_sums)

        total_gap = sum((entry.contribution for entry in ledger), Fraction(0))
        _match("total_gap", certificate.total_gap, total_gap)

        upper, right = upper_darboux(model, partition), right_sum(model, partition)
        _match("upper_sum", certificate.upper_sum, upper)
        _match("right_sum", certificate.right_sum, right)
        _match("total_gap", total_gap, upper - right)

        gate = Check(
            "total_gap",
            total_gap < epsilon,
            f"{format_scalar(total_gap)} < {epsilon}",
        )
        limits = (eps * (1 + self.margin), eps, eps, 3 * eps)
        diagnostics = [
            Check(
                f"Q{index}_sum",
                total < limit,
                f"{format_scalar(total)} < {format_scalar(limit)}",
            )
            for index, (total, limit) in enumerate(zip(group_sums, limits))
        ]
        report = VerificationReport(gate, constraints, diagnostics)
        self.logger.info("Verified certificate: %s", "pass" if report.passed else "fail")
        return report

    def _point_checks(
        self,
        model: FunctionModel,
        x: tuple[Scalar, ...],
        g_values: tuple[Scalar, ...],
        classes: IndexClasses,
        chosen: dict[int, ChosenPoints],
        eps: Fraction,
        bound: Fraction,
    ) -> list[Check]:
        a, b = model.domain
        eta = eps / (b - a)
        radius = eps / (bound * len(classes.d_prime)) if classes.d_prime else None
        failed: dict[str, list[int]] = {
            name: []
            for name in ("y_range", "y_near_g", "y_before_z", "u_window", "u_near_g", "v_window")
        }

        def inside(point: Scalar | None, lo: Scalar, hi: Scalar, hi_closed: bool) -> bool:
            return point is not None and SubInterval(lo, hi, True, hi_closed).contains(point)

        for k in classes.d:
            y, z, u, v = chosen[k].y, chosen[k].z, chosen[k].u, chosen[k].v

            if not inside(y, x[k - 1], x[k], False):
                failed["y_range"].append(k)
                continue

            if not model.evaluate(y) > g_values[k - 1] - eta:
                failed["y_near_g"].append(k)

            if k in classes.d_prime_0:
                if not y < z:
                    failed["y_before_z"].append(k)
                if u is None or not y < u < z or not z - u < radius:
                    failed["u_window"].append(k)
                elif not model.evaluate(u) > model.sup_on(SubInterval(u, b)) - eta:
                    failed["u_near_g"].append(k)

            if k in classes.d_prime_1:
                if not y <= z:
                    failed["y_before_z"].append(k)
                if v is None or not z < v < x[k] or not v - z < radius:
                    failed["v_window"].append(k)

        return [
            Check(name, not indices, f"failing k: {indices}" if indices else "")
            for name, indices in failed.items()
        ]


def _match(name: str, stored: object, recomputed: object) -> None:
    if stored != recomputed:
        raise CertificateCorruptionError(name, stored, recomputed)


def construct_lemma_partition(
    f: FunctionModel, epsilon: Fraction
) -> tuple[Partition, LemmaCertificate]:
    return LemmaEngine().construct(f, epsilon)


def construct_corollary_partition(
    f: FunctionModel, epsilon: Fraction
) -> tuple[Partition, LemmaCertificate]:
    return LemmaEngine().construct_corollary(f, epsilon)


def verify_certificate(f: FunctionModel, certificate: LemmaCertificate) -> VerificationReport:
    return LemmaEngine().verify(f, certificate)
