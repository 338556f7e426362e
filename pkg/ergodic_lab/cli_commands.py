"""cli_commands: implementation of each CLI sub-command.

``run(config)`` dispatches one ExperimentConfig and maps failures to exit
codes: 0 success, 2 validation, 3 budget exceeded, 4 I/O, 1 any other
domain error. On failure a JSON error record is written to stderr.
"""

from __future__ import annotations

import json
import sys
from collections.abc import Callable
from pathlib import Path

import structlog
from pydantic import ValidationError
from rich.console import Console

from ergodic_lab.complexity import deficiency_trace, dim_estimates
from ergodic_lab.core.errors import (
    BudgetExceeded,
    ErgodicLabError,
    IoFailure,
    ModelValidationError,
    SchemaMismatch,
)
from ergodic_lab.entropy import entropy_rate_table
from ergodic_lab.export import ReportTable, export_report
from ergodic_lab.export.tables import (
    convergence_table,
    deficiency_table,
    dimension_table,
    entropy_table,
    fk_table,
    invariance_table,
    split_table,
)
from ergodic_lab.measures import check_shift_invariance, correlation_cesaro, load_model_file
from ergodic_lab.reporting import summarize, write_summary
from ergodic_lab.sampler import read_words, sample_word, write_words
from ergodic_lab.schemas.experiment import ExperimentConfig
from ergodic_lab.schemas.measure import MeasureModel
from ergodic_lab.schemas.word import BinaryWord
from ergodic_lab.smb import fk_profile, log_prob_rate, smb_split

logger = structlog.get_logger(__name__)

# stdout carries data; human-facing messages go to stderr
console = Console(stderr=True)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_IO = 4

INVARIANCE_TOL = 1e-10
CORRELATION_TOL = 0.01


def exit_code_for(exc: Exception) -> int:
    if isinstance(exc, ModelValidationError | SchemaMismatch | ValidationError | ValueError):
        return EXIT_VALIDATION
    if isinstance(exc, BudgetExceeded):
        return EXIT_BUDGET
    if isinstance(exc, IoFailure):
        return EXIT_IO
    return EXIT_DOMAIN


def error_record(exc: Exception) -> dict[str, object]:
    if isinstance(exc, ErgodicLabError):
        return exc.to_record()
    if isinstance(exc, ValidationError):
        first = exc.errors()[0]
        return {
            "error": "ValidationError",
            "message": str(first["msg"]),
            "field": ".".join(str(p) for p in first["loc"]),
        }
    return {"error": type(exc).__name__, "message": str(exc)}


def report_error(exc: Exception) -> int:
    code = exit_code_for(exc)
    record = error_record(exc)
    sys.stderr.write(json.dumps(record, sort_keys=True, default=str) + "\n")
    console.print(f"[bold red]✗ {record['error']}:[/] {record['message']}")
    logger.error("command_failed", exit_code=code, **record)
    return code


# ── helpers ────────────────────────────────────────


def _model(config: ExperimentConfig) -> MeasureModel:
    assert config.model_file is not None
    return load_model_file(config.model_file)


def _sequences(
    config: ExperimentConfig, model: MeasureModel | None, length: int
) -> list[BinaryWord]:
    """Words from --input when given, else replicas 0..R−1 sampled under --seed."""
    if config.input_file is not None:
        words = read_words(config.input_file, packed=config.packed)
        if not words:
            raise IoFailure("input file holds no words", path=str(config.input_file))
        return words
    assert model is not None
    return [sample_word(model, length, config.seed, r) for r in range(config.replicas)]


def _per_replica(
    config: ExperimentConfig,
    words: list[BinaryWord],
    build: Callable[[BinaryWord], ReportTable],
) -> ReportTable:
    """Build one table per word and concatenate them in replica order."""
    merged: ReportTable | None = None
    for replica, word in enumerate(words):
        table = build(word)
        merged = table if merged is None else merged.extend(table)
        logger.info("replica_finished", command=config.command, replica=replica, seed=config.seed)
    assert merged is not None
    return ReportTable(
        merged.columns,
        merged.rows,
        {**merged.metadata, "seed": config.seed, "replicas": len(words)},
        merged.missing,
    )


def _emit(config: ExperimentConfig, table: ReportTable) -> None:
    result = export_report(table, config.output, config.format)
    if config.output is not None:
        console.print(f"[green]✓ wrote {result.output_path}[/] ({len(table.rows)} rows)")


# ── sub-commands ───────────────────────────────────


def cmd_sample(config: ExperimentConfig) -> None:
    model = _model(config)
    words = []
    for r in range(config.replicas):
        words.append(sample_word(model, config.n, config.seed, r))
        logger.info("replica_finished", command="sample", replica=r, seed=config.seed)
    if config.output is None:
        if config.packed:
            raise ValueError("packed output needs --out")
        sys.stdout.write("".join(f"{w}\n" for w in words))
        return
    write_words(words, config.output, packed=config.packed)
    console.print(f"[green]✓ wrote {len(words)} word(s) to {config.output}[/]")


def cmd_entropy(config: ExperimentConfig) -> None:
    table = entropy_rate_table(_model(config), config.n)
    if not table.monotone:
        console.print(f"[yellow]monotonicity violations:[/] {table.violations}")
    _emit(config, entropy_table(table))


def cmd_smb_report(config: ExperimentConfig) -> None:
    model = _model(config)
    grid = config.grid.points(config.n)
    words = _sequences(config, model, config.n)
    _emit(
        config,
        _per_replica(
            config, words, lambda x: convergence_table(log_prob_rate(model, x, grid))
        ),
    )


def cmd_fk(config: ExperimentConfig) -> None:
    model = _model(config)
    words = _sequences(config, model, config.K + 1)
    _emit(config, _per_replica(config, words, lambda x: fk_table(fk_profile(model, x, config.K))))


def cmd_dimension(config: ExperimentConfig) -> None:
    model = _model(config) if config.model_file is not None else None
    words = _sequences(config, model, config.n)

    def build(x: BinaryWord) -> ReportTable:
        grid = config.grid.points(x.length)
        return dimension_table(dim_estimates(x, config.coder, grid, config.tail_fraction, model))

    _emit(config, _per_replica(config, words, build))


def cmd_deficiency(config: ExperimentConfig) -> None:
    model = _model(config)
    words = _sequences(config, model, config.n)
    _emit(
        config,
        _per_replica(
            config,
            words,
            lambda x: deficiency_table(deficiency_trace(model, x, config.grid.points(x.length))),
        ),
    )


def cmd_invariance(config: ExperimentConfig) -> None:
    tol = INVARIANCE_TOL if config.tolerance is None else config.tolerance
    report = check_shift_invariance(_model(config), config.depth, tol)
    table = invariance_table(report)
    _emit(config, table)
    if config.format == "csv" and config.output is not None:
        summary_path = Path(config.output).with_suffix(".summary.json")
        export_report(ReportTable((), [], table.metadata), summary_path, "json")
    style = "green" if report.passed else "yellow"
    console.print(f"[{style}]{report.verdict}[/]")


def cmd_correlation(config: ExperimentConfig) -> None:
    tol = CORRELATION_TOL if config.tolerance is None else config.tolerance
    report = correlation_cesaro(_model(config), config.u, config.v, config.n, tol=tol)
    keep = set(config.grid.points(config.n))
    table = convergence_table(report)
    _emit(
        config,
        ReportTable(
            table.columns,
            [row for row in table.rows if row[0] in keep],
            table.metadata,
            table.missing,
        ),
    )
    console.print(f"[blue]{report.metadata['verdict']}[/]")


def cmd_split(config: ExperimentConfig) -> None:
    model = _model(config)
    grid = config.grid.points(config.n)
    words = _sequences(config, model, config.n + config.K)
    _emit(
        config,
        _per_replica(config, words, lambda x: split_table(smb_split(model, x, config.K, grid))),
    )


def cmd_summarize(config: ExperimentConfig) -> None:
    summary = summarize(config.report_files)
    content = write_summary(summary, config.output)
    if config.output is None:
        sys.stdout.write(content)


COMMANDS: dict[str, Callable[[ExperimentConfig], None]] = {
    "sample": cmd_sample,
    "entropy": cmd_entropy,
    "smb-report": cmd_smb_report,
    "fk": cmd_fk,
    "dimension": cmd_dimension,
    "deficiency": cmd_deficiency,
    "invariance": cmd_invariance,
    "correlation": cmd_correlation,
    "split": cmd_split,
    "summarize": cmd_summarize,
}


def run(config: ExperimentConfig) -> int:
    """Execute one configured command; returns the process exit code."""
    structlog.contextvars.bind_contextvars(command=config.command)
    try:
        COMMANDS[config.command](config)
    except (ErgodicLabError, ValidationError, ValueError) as exc:
        return report_error(exc)
    finally:
        structlog.contextvars.unbind_contextvars("command")
    return EXIT_OK
