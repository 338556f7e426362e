"""CSV exporter: header line plus one line per row."""

from __future__ import annotations

import csv
import io

from ergodic_lab.export.base_exporter import BaseExporter, ReportTable, format_cell


class CsvExporter(BaseExporter):
    """Export reports as plot-ready CSV."""

    format_name = "csv"

    def render(self, table: ReportTable) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow(
                format_cell(value, table.missing.get(column, ""))
                for column, value in zip(table.columns, row, strict=True)
            )
        return buffer.getvalue()
