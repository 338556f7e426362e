"""Report → ReportTable conversions, one per CSV schema."""

from __future__ import annotations

from typing import Any

from ergodic_lab.export.base_exporter import ReportTable
from ergodic_lab.schemas.reports import (
    CheckReport,
    ConvergenceReport,
    DeficiencyTrace,
    DimensionEstimate,
    EntropyTable,
    FkProfile,
    SplitReport,
)

ENTROPY_COLUMNS = ("n", "H_n", "H_n_over_n", "increment")
CONVERGENCE_COLUMNS = ("n", "estimate", "target", "abs_error")
FK_COLUMNS = ("k", "f_k")
DIMENSION_COLUMNS = ("n", "rate")
DEFICIENCY_COLUMNS = ("n", "ideal", "coder", "deficiency", "sup")
INVARIANCE_COLUMNS = ("word", "lhs", "rhs", "abs_violation")
SPLIT_COLUMNS = ("n", "total", "birkhoff_term", "error_term")


def entropy_table(report: EntropyTable) -> ReportTable:
    return ReportTable(
        ENTROPY_COLUMNS,
        [(r.n, r.H_n, r.H_n_over_n, r.increment) for r in report.rows],
        {
            "model_id": report.model_id,
            "monotone": report.monotone,
            "violations": report.violations,
            "rate_estimate": report.rate_estimate,
        },
    )


def convergence_table(
    report: ConvergenceReport, extra: dict[str, Any] | None = None
) -> ReportTable:
    return ReportTable(
        CONVERGENCE_COLUMNS,
        [(r.n, r.estimate, r.target, r.abs_error) for r in report.rows],
        {**report.metadata, **(extra or {})},
        missing={"target": "unknown", "abs_error": "n/a"},
    )


def fk_table(profile: FkProfile) -> ReportTable:
    return ReportTable(
        FK_COLUMNS,
        list(enumerate(profile.values)),
        {
            "x_prefix_length": len(profile.x_prefix),
            "f_star": profile.f_star,
            "f_limit_estimate": profile.f_limit_estimate,
            "stability_window": profile.stability_window,
            "stable": profile.stable,
        },
    )


def dimension_table(estimate: DimensionEstimate) -> ReportTable:
    return ReportTable(
        DIMENSION_COLUMNS,
        [(r.n, r.estimate) for r in estimate.report.rows],
        {
            **estimate.report.metadata,
            "dim_proxy": estimate.dim_proxy,
            "strong_dim_proxy": estimate.strong_dim_proxy,
        },
    )


def deficiency_table(trace: DeficiencyTrace) -> ReportTable:
    return ReportTable(
        DEFICIENCY_COLUMNS,
        [(r.n, r.ideal_bits, r.coder_bits, r.deficiency, r.running_sup) for r in trace.rows],
        {"model_id": trace.model_id, "coder_id": trace.coder_id, "sup": trace.sup},
    )


def invariance_table(report: CheckReport) -> ReportTable:
    return ReportTable(
        INVARIANCE_COLUMNS,
        [(r.word, r.lhs, r.rhs, r.abs_violation) for r in report.worst_rows],
        report.model_dump(exclude={"worst_rows"}),
    )


def split_table(report: SplitReport) -> ReportTable:
    return ReportTable(
        SPLIT_COLUMNS,
        [(r.n, r.total, r.birkhoff_term, r.error_term) for r in report.rows],
        {**report.metadata, "K": report.K},
    )
