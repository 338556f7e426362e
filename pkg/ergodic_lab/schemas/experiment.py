"""Schemas for reproducible runs: sampling contexts, n-grids and CLI experiment configs."""

from __future__ import annotations

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ergodic_lab.schemas.measure import MeasureModel

UINT64_MAX = 2**64 - 1

Command = Literal[
    "sample",
    "entropy",
    "smb-report",
    "fk",
    "dimension",
    "deficiency",
    "invariance",
    "correlation",
    "split",
    "summarize",
]


class SampleRun(BaseModel):
    """(model, length, seed, replica): identical fields always give the identical word."""

    model_config = ConfigDict(frozen=True)

    model: MeasureModel
    length: int = Field(gt=0)
    seed: int = Field(ge=0, le=UINT64_MAX)
    replica: int = Field(default=0, ge=0)


class GridSpec(BaseModel):
    """Geometric n-grid: start, start·factor, …, count points."""

    model_config = ConfigDict(frozen=True)

    start: int = Field(default=256, gt=0)
    factor: int = Field(default=2, gt=1)
    count: int = Field(default=10, gt=0)

    @classmethod
    def parse(cls, text: str) -> GridSpec:
        """Parse the ``start:factor:count`` flag form."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must look like start:factor:count, got {text!r}")
        start, factor, count = (int(p) for p in parts)
        return cls(start=start, factor=factor, count=count)

    def points(self, limit: int | None = None) -> list[int]:
        """Grid points, truncated to values ≤ limit; limit itself is appended when missed."""
        pts = [self.start * self.factor**i for i in range(self.count)]
        if limit is None:
            return pts
        kept = [p for p in pts if p <= limit]
        if not kept or kept[-1] != limit:
            kept.append(limit)
        return kept


class ExperimentConfig(BaseModel):
    """Everything that determines a CLI run. seed and replicas fix all stochastic output."""

    command: Command
    model_file: Path | None = None
    n: int = Field(default=4096, gt=0)
    seed: int = Field(default=0, ge=0, le=UINT64_MAX)
    replicas: int = Field(default=1, gt=0)
    grid: GridSpec = Field(default_factory=GridSpec)
    output: Path | None = None
    format: Literal["csv", "json"] = "csv"

    # Command-specific knobs
    u: str = "1"
    v: str = "1"
    K: int = Field(default=32, ge=0)
    depth: int = Field(default=12, ge=0)
    tolerance: float | None = Field(default=None, gt=0.0)
    tail_fraction: float = Field(default=0.25, gt=0.0, le=1.0)
    coder: Literal["lz78", "ideal"] = "lz78"
    input_file: Path | None = None
    packed: bool = False
    report_files: list[Path] = Field(default_factory=list)

    @model_validator(mode="after")
    def _needs_model(self) -> ExperimentConfig:
        model_free = self.command == "summarize" or (
            self.command == "dimension" and self.coder == "lz78" and self.input_file is not None
        )
        if not model_free and self.model_file is None:
            raise ValueError(f"command {self.command!r} requires --model")
        if self.command == "summarize" and not self.report_files:
            raise ValueError("summarize requires at least one report file")
        return self
