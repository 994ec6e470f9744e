"""Exact right-endpoint Riemann sum partitions."""

from .certificate import (
    ChosenPoints,
    IndexClasses,
    LedgerEntry,
    LemmaCertificate,
    VerificationReport,
)
from .corpus import Corpus, CorpusEntry
from .dsl import build_function, parse_function, to_dsl
from .engine import (
    DEFAULT_DIAGNOSTIC_MARGIN,
    LemmaEngine,
    construct_corollary_partition,
    construct_lemma_partition,
    verify_certificate,
)
from .errors import (
    CertificateCorruptionError,
    ConfigError,
    DomainError,
    EmptyIntervalError,
    FunctionDomainError,
    FunctionSyntaxError,
    LabError,
    NameKeyError,
    OracleDefectError,
    PartitionError,
    RationalError,
    RuleViolationError,
)
from .event import Event
from .harness import (
    ExperimentHarness,
    psi_experiment,
    regular_endpoint_counterexample,
    right_endpoint_limit_probe,
    theorem_check,
    unbounded_demo,
)
from .interval import SubInterval, irrational_point, rational_point, smallest_denominator
from .models import (
    DEFAULT_SEARCH_BUDGET,
    AffineImage,
    DirichletIndicator,
    FunctionModel,
    Negate,
    PiecewiseMonotone,
    Thomae,
    evaluate,
    inf_on,
    near_g_match_point,
    near_max_point,
    negate,
    running_sup,
    sup_on,
)
from .numeric import (
    BoundedApprox,
    ExactRational,
    QuadraticSurd,
    parse_rational,
    rational,
    sqrt_approx,
)
from .partition import (
    ConvexCombination,
    LeftEndpoint,
    Midpoint,
    Partition,
    RightEndpoint,
    SampleRule,
    TableRule,
    darboux_gap_probe,
    lower_darboux,
    mesh,
    refine,
    riemann_sum,
    uniform_partition,
    upper_darboux,
)
from .profile import MonotoneProfile, PowerMap, level_left_edge

__all__ = [
    "ChosenPoints",
    "IndexClasses",
    "LedgerEntry",
    "LemmaCertificate",
    "VerificationReport",
    "Corpus",
    "CorpusEntry",
    "build_function",
    "parse_function",
    "to_dsl",
    "DEFAULT_DIAGNOSTIC_MARGIN",
    "LemmaEngine",
    "construct_corollary_partition",
    "construct_lemma_partition",
    "verify_certificate",
    "CertificateCorruptionError",
    "ConfigError",
    "DomainError",
    "EmptyIntervalError",
    "FunctionDomainError",
    "FunctionSyntaxError",
    "LabError",
    "NameKeyError",
    "OracleDefectError",
    "PartitionError",
    "RationalError",
    "RuleViolationError",
    "Event",
    "ExperimentHarness",
    "psi_experiment",
    "regular_endpoint_counterexample",
    "right_endpoint_limit_probe",
    "theorem_check",
    "unbounded_demo",
    "SubInterval",
    "irrational_point",
    "rational_point",
    "smallest_denominator",
    "DEFAULT_SEARCH_BUDGET",
    "AffineImage",
    "DirichletIndicator",
    "FunctionModel",
    "Negate",
    "PiecewiseMonotone",
    "Thomae",
    "evaluate",
    "inf_on",
    "near_g_match_point",
    "near_max_point",
    "negate",
    "running_sup",
    "sup_on",
    "BoundedApprox",
    "ExactRational",
    "QuadraticSurd",
    "parse_rational",
    "rational",
    "sqrt_approx",
    "ConvexCombination",
    "LeftEndpoint",
    "Midpoint",
    "Partition",
    "RightEndpoint",
    "SampleRule",
    "TableRule",
    "darboux_gap_probe",
    "lower_darboux",
    "mesh",
    "refine",
    "riemann_sum",
    "uniform_partition",
    "upper_darboux",
    "MonotoneProfile",
    "PowerMap",
    "level_left_edge",
]
