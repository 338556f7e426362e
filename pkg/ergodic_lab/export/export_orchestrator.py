"""Format registry: resolves format names to exporters."""

from __future__ import annotations

from pathlib import Path

import structlog

from ergodic_lab.export.base_exporter import BaseExporter, ExportResult, ReportTable

logger = structlog.get_logger(__name__)


def _build_registry() -> dict[str, BaseExporter]:
    """Lazy-build the exporter registry."""
    from ergodic_lab.export.exporter_csv import CsvExporter
    from ergodic_lab.export.exporter_json import JsonExporter

    return {
        "csv": CsvExporter(),
        "json": JsonExporter(),
    }


def get_available_formats() -> list[str]:
    return sorted(_build_registry())


def get_exporter(fmt: str) -> BaseExporter:
    registry = _build_registry()
    exporter = registry.get(fmt.lower().strip())
    if exporter is None:
        raise ValueError(f"Unknown format: {fmt}. Available: {sorted(registry)}")
    return exporter


def export_report(
    table: ReportTable, output_path: str | Path | None, fmt: str = "csv"
) -> ExportResult:
    """Write one table in the named format (stdout when output_path is None)."""
    result = get_exporter(fmt).export(table, output_path)
    logger.debug(
        "report_exported",
        format=result.format,
        output_path=result.output_path,
        rows=len(table.rows),
    )
    return result
