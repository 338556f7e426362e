"""Base exporter ABC and the tabular payload every exporter writes.

All exporters follow a common interface:
    exporter.export(table, output_path) → ExportResult
An output path of None means stdout.
"""

from __future__ import annotations

import sys
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ergodic_lab.core.errors import IoFailure

Cell = int | float | str | None


@dataclass(frozen=True)
class ReportTable:
    """Columns, rows and run metadata of one report, ready to serialise."""

    columns: tuple[str, ...]
    rows: list[tuple[Cell, ...]]
    metadata: dict[str, Any] = field(default_factory=dict)
    # CSV text for None cells, per column
    missing: dict[str, str] = field(default_factory=dict)

    def extend(self, other: ReportTable) -> ReportTable:
        """Concatenate rows of a table with the same columns (metadata of self kept)."""
        if other.columns != self.columns:
            raise ValueError(f"cannot merge {other.columns} into {self.columns}")
        return ReportTable(self.columns, [*self.rows, *other.rows], self.metadata, self.missing)


@dataclass(frozen=True)
class ExportResult:
    """Result of an export operation."""

    format: str
    output_path: str
    size_bytes: int = 0
    success: bool = True
    error: str = ""


class BaseExporter(ABC):
    """Abstract base for all report exporters."""

    format_name: str = "base"

    @abstractmethod
    def render(self, table: ReportTable) -> str:
        """Serialise the table to text."""
        ...

    def export(self, table: ReportTable, output_path: str | Path | None) -> ExportResult:
        content = self.render(table)
        if output_path is None:
            sys.stdout.write(content)
            sys.stdout.flush()
            return ExportResult(format=self.format_name, output_path="-", size_bytes=len(content))
        path = Path(output_path)
        try:
            self._ensure_dir(path)
            # newline="" keeps "\n" line ends on every platform
            with path.open("w", encoding="utf-8", newline="") as fh:
                fh.write(content)
        except OSError as exc:
            raise IoFailure(f"cannot write report: {exc}", path=str(path)) from exc
        return ExportResult(
            format=self.format_name,
            output_path=str(path),
            size_bytes=len(content.encode()),
        )

    def _ensure_dir(self, path: Path) -> Path:
        """Ensure parent directory exists."""
        path.parent.mkdir(parents=True, exist_ok=True)
        return path


def format_cell(value: Cell, missing: str = "") -> str:
    """repr for floats so that rereading gives the identical double."""
    if value is None:
        return missing
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)
