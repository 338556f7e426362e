"""JSON exporter: mirrors the CSV as {schema, rows, metadata} with sorted keys."""

from __future__ import annotations

import json

from ergodic_lab.export.base_exporter import BaseExporter, ReportTable


class JsonExporter(BaseExporter):
    """Export reports as JSON (.json) files."""

    format_name = "json"

    def render(self, table: ReportTable) -> str:
        envelope = {
            "schema": list(table.columns),
            "rows": [dict(zip(table.columns, row, strict=True)) for row in table.rows],
            "metadata": table.metadata,
        }
        return json.dumps(envelope, indent=2, sort_keys=True, default=str) + "\n"
