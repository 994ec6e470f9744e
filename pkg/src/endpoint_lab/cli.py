"""Command line entry point.

Exit status is 0 when every gate of the invoked command passes, 1 when a
gate fails (or a certificate is corrupt) and 2 on input or configuration
errors.
"""

from __future__ import annotations

import argparse
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
import json
import logging
import os
from pathlib import Path
import sys

from .certificate import LemmaCertificate
from .corpus import Corpus
from .default_corpus import default_corpus
from .dsl import build_function
from .engine import LemmaEngine
from .errors import CertificateCorruptionError, ConfigError, LabError
from .harness import (
    DEFAULT_PROBE_DEPTH,
    DEFAULT_SEED_DOUBLINGS,
    ExperimentHarness,
)
from .helpers import name_to_key
from .models import FunctionModel
from .numeric import format_scalar, parse_rational
from .partition import parse_rule
from .reports import FORMATS, ExperimentReport, write_csv, write_json, write_report

_LOGGER = logging.getLogger(__name__)

COMMANDS = ("lemma", "corollary", "verify", "theorem", "psi", "counterexample", "unbounded", "probe")
OUT_ENV = "ENDPOINT_LAB_OUT"
DEFAULT_OUT = "out"
DEFAULT_SEED_PARTITION_N = 1
DEFAULT_PSI_N = (2, 4, 8, 16)
DEFAULT_COUNTEREXAMPLE_N = (1, 5, 64, 1000)
DEFAULT_UNBOUNDED_N = (100, 10000)
DEFAULT_UNBOUNDED_C = ("1/4",)
DEFAULT_MESHES = ("1/4", "1/16")

EXIT_OK = 0
EXIT_GATE = 1
EXIT_INPUT = 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    function_source: str | None = None
    epsilon: Fraction | None = None
    output_dir: Path = Path(DEFAULT_OUT)
    output_format: str = "json"
    n_values: tuple[int, ...] = ()
    seed_partition_n: int = DEFAULT_SEED_PARTITION_N
    depth: int = DEFAULT_PROBE_DEPTH
    rule: str = "right"
    c_values: tuple[Fraction, ...] = ()
    meshes: tuple[Fraction, ...] = ()
    cert_path: Path | None = None
    verbosity: int = 0
    corpus: Corpus = field(default=default_corpus, compare=False)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command '{self.command}'")

        if self.command in ("lemma", "corollary", "theorem"):
            if self.epsilon is None:
                raise ConfigError("--epsilon is required")
            if self.epsilon <= 0:
                raise ConfigError("epsilon must be positive")

        if self.command in ("lemma", "corollary", "theorem", "psi", "probe"):
            if not self.function_source:
                raise ConfigError("--fn is required")

        if self.command == "verify" and self.cert_path is None:
            raise ConfigError("--cert is required")

        if self.output_format not in FORMATS:
            raise ConfigError(f"Unknown format '{self.output_format}'")

        if any(n < 1 for n in (*self.n_values, self.seed_partition_n, self.depth)):
            raise ConfigError("n and depth must be positive")

    @property
    def function_label(self) -> str:
        source = self.function_source or ""

        if source in self.corpus.entries_by_key:
            return source

        if not source.lstrip().startswith("{") and Path(source).is_file():
            return Path(source).stem

        return "inline"


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except LabError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=DEFAULT_OUT, help=f"output directory (env {OUT_ENV})")
    common.add_argument("--format", default="json", choices=FORMATS, dest="output_format")
    common.add_argument("-v", "--verbose", action="count", default=0)

    function = argparse.ArgumentParser(add_help=False)
    function.add_argument("--fn", dest="function_source", help="corpus key, file or inline JSON")

    epsilon = argparse.ArgumentParser(add_help=False)
    epsilon.add_argument("--epsilon", type=_rational_arg, help="exact 'p/q' rational")

    parser = argparse.ArgumentParser(
        prog="endpoint-lab",
        description="Exact right-endpoint partition constructions and experiments",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("lemma", parents=[common, function, epsilon])
    commands.add_parser("corollary", parents=[common, function, epsilon])

    verify = commands.add_parser("verify", parents=[common, function])
    verify.add_argument("--cert", type=Path, required=True)

    theorem = commands.add_parser("theorem", parents=[common, function, epsilon])
    theorem.add_argument(
        "--seed-partition-n", type=int, default=DEFAULT_SEED_PARTITION_N, dest="seed_partition_n"
    )

    psi = commands.add_parser("psi", parents=[common, function])
    psi.add_argument("--rule", default="right", help="right, left, midpoint or convex:p/q")
    psi.add_argument("--n", type=int, nargs="+", default=list(DEFAULT_PSI_N))
    psi.add_argument("--depth", type=int, default=DEFAULT_PROBE_DEPTH)

    counterexample = commands.add_parser("counterexample", parents=[common])
    counterexample.add_argument("--n", type=int, nargs="+", default=list(DEFAULT_COUNTEREXAMPLE_N))

    unbounded = commands.add_parser("unbounded", parents=[common])
    unbounded.add_argument("--n", type=int, nargs="+", default=list(DEFAULT_UNBOUNDED_N))
    unbounded.add_argument(
        "--c", type=_rational_arg, nargs="+", default=list(DEFAULT_UNBOUNDED_C), dest="c_values"
    )

    probe = commands.add_parser("probe", parents=[common, function])
    probe.add_argument(
        "--mesh", type=_rational_arg, nargs="+", default=list(DEFAULT_MESHES), dest="meshes"
    )

    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    """Raises:
        ConfigError

    """
    return RunConfig(
        command=args.command,
        function_source=getattr(args, "function_source", None),
        epsilon=getattr(args, "epsilon", None),
        output_dir=Path(os.environ.get(OUT_ENV) or args.out),
        output_format=args.output_format,
        n_values=tuple(getattr(args, "n", ())),
        seed_partition_n=getattr(args, "seed_partition_n", DEFAULT_SEED_PARTITION_N),
        depth=getattr(args, "depth", DEFAULT_PROBE_DEPTH),
        rule=getattr(args, "rule", "right"),
        c_values=tuple(Fraction(c) for c in getattr(args, "c_values", ())),
        meshes=tuple(Fraction(mesh) for mesh in getattr(args, "meshes", ())),
        cert_path=getattr(args, "cert", None),
        verbosity=args.verbose,
    )


def _write_certificate(config: RunConfig, certificate: LemmaCertificate) -> list[Path]:
    key = name_to_key(f"{config.function_label} {config.command}")
    paths = []

    if config.output_format in ("json", "both"):
        paths.append(config.output_dir / f"{key}.json")
        write_json(paths[-1], certificate.to_json())

    if config.output_format in ("csv", "both"):
        paths.append(config.output_dir / f"{key}.csv")
        write_csv(paths[-1], [entry.to_json() for entry in certificate.ledger])

    return paths


def _run_construction(config: RunConfig, f: FunctionModel, engine: LemmaEngine) -> int:
    if config.command == "lemma":
        partition, certificate = engine.construct(f, config.epsilon)
        difference = "U(f,Q) - R(f,Q,re)"
    else:
        partition, certificate = engine.construct_corollary(f, config.epsilon)
        difference = "R(f,Q,re) - L(f,Q)"

    paths = _write_certificate(config, certificate)
    report = engine.verify(f, certificate)
    gap = format_scalar(certificate.total_gap)

    print(f"Q has {len(partition)} points; {difference} = {gap}")
    for path in paths:
        print(f"Wrote {path}")

    if not report.passed:
        for check in report.failures:
            print(f"FAIL {check.name}: {check.detail}")
        return EXIT_GATE

    print(f"PASS {gap} < {config.epsilon}")
    return EXIT_OK


def _run_verify(config: RunConfig, engine: LemmaEngine) -> int:
    try:
        text = config.cert_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot read certificate '{config.cert_path}'", exc) from exc

    try:
        certificate = LemmaCertificate.loads(text)
    except CertificateCorruptionError as exc:
        print(f"FAIL {exc}")
        return EXIT_GATE

    if config.function_source:
        f = config.corpus.resolve(config.function_source)
    else:
        f = build_function(certificate.function)

    try:
        report = engine.verify(f, certificate)
    except CertificateCorruptionError as exc:
        print(f"FAIL {exc}")
        return EXIT_GATE

    key = name_to_key(f"{config.cert_path.stem} verify")
    path = config.output_dir / f"{key}.json"
    write_json(path, report.to_json())
    print(f"Wrote {path}")

    for check in (report.gate, *report.constraints, *report.diagnostics):
        print(f"{'PASS' if check.passed else 'FAIL'} {check.name}: {check.detail}")

    return EXIT_OK if report.passed else EXIT_GATE


def _run_experiment(config: RunConfig, harness: ExperimentHarness) -> int:
    report: ExperimentReport

    if config.command == "theorem":
        f = config.corpus.resolve(config.function_source)
        report = harness.theorem_check(f, config.epsilon, config.seed_partition_n)
        print(
            f"effective n = {report.effective_n}; "
            f"U(f,Q^U) - L(f,Q^L) = {format_scalar(report.final_gap)}"
        )
    elif config.command == "psi":
        f = config.corpus.resolve(config.function_source)
        report = harness.psi_experiment(f, parse_rule(config.rule), config.n_values)
    elif config.command == "probe":
        f = config.corpus.resolve(config.function_source)
        report = harness.right_endpoint_limit_probe(f, config.meshes)
    elif config.command == "counterexample":
        report = harness.regular_endpoint_counterexample(config.n_values)
    else:
        report = harness.unbounded_demo(config.c_values, config.n_values)

    name = f"{config.function_label} {config.command}" if config.function_source else None
    for path in write_report(report, config.output_dir, config.output_format, name=name):
        print(f"Wrote {path}")

    for row in report.rows():
        print(json.dumps(row, sort_keys=True))

    for gate, passed in report.gates().items():
        print(f"{'PASS' if passed else 'FAIL'} {gate}")

    return EXIT_OK if report.passed else EXIT_GATE


def run(config: RunConfig) -> int:
    """Run one command and return its exit status.

    Raises:
        LabError

    """
    engine = LemmaEngine()
    harness = ExperimentHarness(
        engine, seed_doublings=DEFAULT_SEED_DOUBLINGS, probe_depth=config.depth
    )

    if config.command in ("lemma", "corollary"):
        return _run_construction(config, config.corpus.resolve(config.function_source), engine)

    if config.command == "verify":
        return _run_verify(config, engine)

    return _run_experiment(config, harness)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        return run(build_config(args))
    except LabError as exc:
        _LOGGER.debug("%s: %s => %s", "cli", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
