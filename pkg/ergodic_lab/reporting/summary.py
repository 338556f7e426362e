"""Aggregate report files (one per replica or run) into per-n statistics.

Every file must share the same column header, with ``n`` first. The value
column is the second column. When an ``abs_error`` column is present a row
passes if its error is at most the tolerance; the overall verdict is the
pass flag at the largest n, since convergence reports are judged at their
tail.
"""

from __future__ import annotations

import csv
import json
import math
from collections import defaultdict
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np
import structlog
from pydantic import BaseModel

from ergodic_lab.config import get_settings
from ergodic_lab.core.errors import IoFailure, SchemaMismatch

logger = structlog.get_logger(__name__)


class SummaryRow(BaseModel):
    n: int
    count: int
    mean: float
    stderr: float
    pass_fraction: float | None = None
    passed: bool | None = None


class Summary(BaseModel):
    columns: list[str]
    per_n: list[SummaryRow]
    passed: bool | None = None


def _as_float(cell: Any) -> float | None:
    if cell is None:
        return None
    try:
        return float(cell)
    except (TypeError, ValueError):
        return None


def read_report(path: str | Path) -> tuple[list[str], list[dict[str, Any]]]:
    """Columns and rows of a CSV or JSON report written by the exporters."""
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read report: {exc}", path=str(file_path)) from exc
    if file_path.suffix.lower() == ".json":
        try:
            data = json.loads(text)
            return list(data["schema"]), list(data["rows"])
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise SchemaMismatch("not an exported JSON report", path=str(file_path)) from exc
    reader = csv.DictReader(text.splitlines())
    columns = list(reader.fieldnames or [])
    return columns, list(reader)


def summarize(
    report_files: Sequence[str | Path],
    *,
    tolerance: float | None = None,
    pass_fraction: float | None = None,
) -> Summary:
    """Per-n mean, standard error and pass fraction across all files.

    Raises:
        SchemaMismatch: if the files do not share a header starting with ``n``.
    """
    if not report_files:
        raise SchemaMismatch("no report files given")
    settings = get_settings()
    tolerance = settings.summary_tolerance if tolerance is None else tolerance
    pass_fraction = settings.summary_pass_fraction if pass_fraction is None else pass_fraction

    columns: list[str] | None = None
    values: dict[int, list[float]] = defaultdict(list)
    passes: dict[int, list[bool]] = defaultdict(list)
    for path in report_files:
        file_columns, rows = read_report(path)
        if columns is None:
            columns = file_columns
            if len(columns) < 2 or columns[0] != "n":
                raise SchemaMismatch(
                    "summarize needs a header starting with n", columns=columns, path=str(path)
                )
        elif file_columns != columns:
            raise SchemaMismatch(
                "report files do not share a schema",
                expected=columns,
                found=file_columns,
                path=str(path),
            )
        value_column = columns[1]
        for row in rows:
            n = int(row["n"])
            value = _as_float(row[value_column])
            if value is None:
                continue
            values[n].append(value)
            if "abs_error" in columns:
                error = _as_float(row["abs_error"])
                if error is not None:
                    passes[n].append(error <= tolerance)

    assert columns is not None
    per_n = []
    for n in sorted(values):
        sample = np.array(values[n])
        stderr = float(sample.std(ddof=1) / math.sqrt(sample.size)) if sample.size > 1 else 0.0
        row = SummaryRow(n=n, count=int(sample.size), mean=float(sample.mean()), stderr=stderr)
        if passes[n]:
            row.pass_fraction = sum(passes[n]) / len(passes[n])
            row.passed = row.pass_fraction >= pass_fraction
        per_n.append(row)

    summary = Summary(
        columns=columns,
        per_n=per_n,
        passed=per_n[-1].passed if per_n else None,
    )
    logger.info(
        "reports_summarized",
        files=len(report_files),
        n_points=len(per_n),
        passed=summary.passed,
    )
    return summary


def write_summary(summary: Summary, output_path: str | Path | None) -> str:
    """Serialise with sorted keys; writes to the path when one is given."""
    content = json.dumps(summary.model_dump(), indent=2, sort_keys=True) + "\n"
    if output_path is not None:
        path = Path(output_path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(content, encoding="utf-8")
        except OSError as exc:
            raise IoFailure(f"cannot write summary: {exc}", path=str(path)) from exc
    return content
