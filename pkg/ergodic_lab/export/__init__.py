"""Report export: CSV and JSON writers behind a format registry."""

from ergodic_lab.export.base_exporter import BaseExporter, ExportResult, ReportTable
from ergodic_lab.export.export_orchestrator import (
    export_report,
    get_available_formats,
    get_exporter,
)

__all__ = [
    "BaseExporter",
    "ExportResult",
    "ReportTable",
    "export_report",
    "get_available_formats",
    "get_exporter",
]
