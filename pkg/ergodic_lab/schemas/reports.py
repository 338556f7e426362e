"""Pydantic schemas for every report produced by the limit-checking operations."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field, field_validator, model_validator


class ConvergenceRow(BaseModel):
    """One (n, estimate, target, abs_error) row. target None means unknown."""

    n: int
    estimate: float
    target: float | None = None
    abs_error: float | None = None

    @model_validator(mode="after")
    def _fill_error(self) -> ConvergenceRow:
        if self.target is not None and self.abs_error is None:
            self.abs_error = abs(self.estimate - self.target)
        return self

    def csv_cells(self) -> list[str]:
        return [
            str(self.n),
            repr(self.estimate),
            "unknown" if self.target is None else repr(self.target),
            "n/a" if self.abs_error is None else repr(self.abs_error),
        ]


class ConvergenceReport(BaseModel):
    """A table of convergence rows, strictly increasing in n, plus run metadata."""

    rows: list[ConvergenceRow] = Field(default_factory=list)
    metadata: dict[str, Any] = Field(default_factory=dict)

    @field_validator("rows")
    @classmethod
    def _strictly_increasing(cls, rows: list[ConvergenceRow]) -> list[ConvergenceRow]:
        for prev, cur in zip(rows, rows[1:], strict=False):
            if cur.n <= prev.n:
                raise ValueError(f"rows must be strictly increasing in n ({prev.n} then {cur.n})")
        return rows

    @property
    def final(self) -> ConvergenceRow:
        return self.rows[-1]

    def estimates(self) -> list[float]:
        return [row.estimate for row in self.rows]

    def row_at(self, n: int) -> ConvergenceRow:
        for row in self.rows:
            if row.n == n:
                return row
        raise KeyError(n)


class ViolationRow(BaseModel):
    word: str
    lhs: float
    rhs: float
    abs_violation: float


class CheckReport(BaseModel):
    """Outcome of a structural check. Failures are reported here, never raised."""

    check: str
    model_id: str = ""
    passed: bool
    verdict: str
    checked: int = 0
    tolerance: float = 0.0
    worst_violation: float = 0.0
    offending_word: str | None = None
    worst_rows: list[ViolationRow] = Field(default_factory=list)
    warnings: list[str] = Field(default_factory=list)


class EntropyRow(BaseModel):
    n: int
    H_n: float
    H_n_over_n: float
    increment: float


class EntropyTable(BaseModel):
    """Block entropies H_n with per-symbol and increment estimates."""

    model_id: str = ""
    rows: list[EntropyRow] = Field(default_factory=list)
    monotone: bool = True
    violations: list[str] = Field(default_factory=list)

    @property
    def increments(self) -> list[float]:
        return [row.increment for row in self.rows]

    @property
    def rate_estimate(self) -> float:
        """The reported entropy-rate estimate: the last increment."""
        return self.rows[-1].increment


class FkProfile(BaseModel):
    """f_0(x), …, f_K(x) with running maximum and a stability flag."""

    x_prefix: str
    values: list[float]
    f_star: float
    f_limit_estimate: float
    stability_window: int
    stable: bool


class CodeLength(BaseModel):
    bits: float = Field(ge=0.0)
    coder_id: str


class DeficiencyRow(BaseModel):
    n: int
    ideal_bits: float
    coder_bits: float
    deficiency: float
    running_sup: float


class DeficiencyTrace(BaseModel):
    """Ideal code length minus compressor code length along a prefix grid."""

    model_id: str = ""
    coder_id: str = "lz78"
    rows: list[DeficiencyRow] = Field(default_factory=list)

    @property
    def sup(self) -> float:
        return self.rows[-1].running_sup if self.rows else float("-inf")


class MonteCarloEstimate(BaseModel):
    mean: float
    stderr: float
    n_samples: int


class DimensionEstimate(BaseModel):
    """Tail min / max of the compression rate, proxies for dim and Dim."""

    dim_proxy: float
    strong_dim_proxy: float
    report: ConvergenceReport


class SplitRow(BaseModel):
    n: int
    total: float
    birkhoff_term: float
    error_term: float


class SplitReport(BaseModel):
    """−(1/n)log μ[x↾n] split into a Birkhoff average of f_K and a vanishing error term."""

    K: int
    rows: list[SplitRow] = Field(default_factory=list)
    metadata: dict[str, Any] = Field(default_factory=dict)
