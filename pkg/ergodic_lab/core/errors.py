"""core.errors: custom exception hierarchy."""

from __future__ import annotations

from typing import Any


class ErgodicLabError(Exception):
    """Base exception for all ergodic-lab errors."""

    def __init__(self, message: str = "", **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context = context

    def to_record(self) -> dict[str, Any]:
        """Machine-readable error record (written by the CLI on failure)."""
        return {"error": type(self).__name__, "message": self.message, **self.context}


class ModelValidationError(ErgodicLabError):
    """Model file or model parameters violate the measure invariants."""

    def __init__(self, message: str, field: str = "", detail: str = "") -> None:
        super().__init__(message, field=field, detail=detail)
        self.field = field
        self.detail = detail


class ConditioningOnNull(ErgodicLabError):
    """Conditioning on a cylinder of measure zero."""


class NullCylinder(ErgodicLabError):
    """A prefix has measure zero where a finite code length is required."""

    def __init__(self, message: str, n: int) -> None:
        super().__init__(message, n=n)
        self.n = n


class NonConvergence(ErgodicLabError):
    """An iterative solver did not reach its tolerance within budget."""


class BudgetExceeded(ErgodicLabError):
    """An exhaustive enumeration was requested beyond its configured budget."""


class NoClosedForm(ErgodicLabError):
    """No closed-form entropy exists for the model family."""


class SchemaMismatch(ErgodicLabError):
    """Report files given to the summarizer do not share a schema."""


class IoFailure(ErgodicLabError):
    """Reading or writing a model, word or report file failed."""
