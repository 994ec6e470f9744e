from __future__ import annotations

import csv
from datetime import datetime, timezone
import json
import logging
from pathlib import Path
from typing import Any

from .helpers import name_to_key

_LOGGER = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "both")
TIMESTAMP_FIELD = "generated_at"


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


class ExperimentReport:
    """Base for experiment results written as a JSON envelope and CSV rows."""

    experiment = "experiment"

    def inputs(self) -> dict[str, Any]:
        return {}

    def outputs(self) -> dict[str, Any]:
        return {}

    def gates(self) -> dict[str, bool]:
        return {}

    def rows(self) -> list[dict[str, Any]]:
        return []

    @property
    def passed(self) -> bool:
        return all(self.gates().values())

    @property
    def key(self) -> str:
        return name_to_key(self.experiment)

    def to_report(self) -> dict[str, Any]:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "experiment": self.experiment,
            "inputs": self.inputs(),
            "outputs": self.outputs(),
            "gates": self.gates(),
            "passed": self.passed,
            TIMESTAMP_FIELD: _utc_now(),
        }


def dumps_json(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=True)


def write_json(path: Path, obj: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_json(obj) + "\n", encoding="utf-8")


def write_csv(path: Path, rows: list[dict[str, Any]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fieldnames: list[str] = []

    for row in rows:
        fieldnames.extend(name for name in row if name not in fieldnames)

    with path.open("w", newline="", encoding="utf-8") as file:
        writer = csv.DictWriter(file, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def write_report(
    report: ExperimentReport,
    output_dir: Path,
    output_format: str = "json",
    *,
    name: str | None = None,
) -> list[Path]:
    """Write `<key>.json` and/or `<key>.csv` and return the paths written.

    The key is the slugified `name`, or the experiment name.

    Raises:
        NameKeyError

    """
    key = name_to_key(name) if name else report.key
    paths = []

    if output_format in ("json", "both"):
        paths.append(output_dir / f"{key}.json")
        write_json(paths[-1], report.to_report())

    if output_format in ("csv", "both"):
        paths.append(output_dir / f"{key}.csv")
        write_csv(paths[-1], report.rows())

    for path in paths:
        _LOGGER.debug("%s: %s => %s", "write_report", report.experiment, path)

    return paths
