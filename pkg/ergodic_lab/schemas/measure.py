"""Pydantic schemas for the closed family of measures on {0,1}^ℕ.

Four variants, discriminated by ``type``:
- bernoulli      i.i.d. bits with P(1) = p
- markov         first-order chain on the bits themselves
- hidden_markov  m hidden states, each emitting a fixed bit
- mixture        convex combination of non-mixture components (depth 1)

Models are frozen after construction. ``pi`` / ``pi_h`` are solved from the
transition matrix when omitted.
"""

from __future__ import annotations

from functools import cached_property
from typing import Annotated, Any, Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, model_validator
from pydantic_core import PydanticCustomError

from ergodic_lab.config import get_settings

FloatArray = npt.NDArray[np.float64]


def _invalid(field: str, message: str) -> PydanticCustomError:
    """A validation error whose context carries the offending location, e.g. ``P.1``."""
    return PydanticCustomError("invalid_measure", "{message}", {"message": message, "field": field})


def _check_probability_vector(
    name: str, vec: tuple[float, ...], tol: float, field: str | None = None
) -> None:
    field = field or name
    if any(v < 0.0 or v > 1.0 for v in vec):
        raise _invalid(field, f"{name} has entries outside [0, 1]: {[float(v) for v in vec]}")
    total = float(sum(vec))
    if abs(total - 1.0) > tol:
        raise _invalid(field, f"{name} sums to {total!r}, expected 1")


def _check_stochastic(name: str, rows: tuple[tuple[float, ...], ...], tol: float) -> None:
    width = len(rows)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise _invalid(
                f"{name}.{i}", f"{name} row {i} has {len(row)} entries, expected {width}"
            )
        _check_probability_vector(f"{name} row {i}", row, tol, field=f"{name}.{i}")


def _fill_stationary(data: Any, matrix_key: str, vector_key: str) -> Any:
    if isinstance(data, dict) and data.get(vector_key) is None and data.get(matrix_key):
        from ergodic_lab.core.errors import ErgodicLabError, ModelValidationError
        from ergodic_lab.measures.stationary import stationary_distribution

        try:
            matrix = np.asarray(data[matrix_key], dtype=np.float64)
            solved = stationary_distribution(matrix)
        except ModelValidationError as exc:
            raise _invalid(
                exc.field.replace("P", matrix_key, 1), f"{matrix_key}: {exc.message}"
            ) from exc
        except (ErgodicLabError, ValueError) as exc:
            raise _invalid(
                vector_key, f"{vector_key} could not be solved from {matrix_key}: {exc}"
            ) from exc
        data = {**data, vector_key: tuple(float(v) for v in solved)}
    return data


class _FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", ignored_types=(cached_property,))

    name: str = ""

    @property
    def model_id(self) -> str:
        return self.name or str(getattr(self, "type", "model"))


class BernoulliModel(_FrozenModel):
    """μ_p[w] = p^{|w|_1} (1−p)^{|w|_0}."""

    type: Literal["bernoulli"] = "bernoulli"
    p: float = Field(ge=0.0, le=1.0)


class MarkovModel(_FrozenModel):
    """Stationary first-order Markov chain on {0, 1}."""

    type: Literal["markov"] = "markov"
    P: tuple[tuple[float, float], tuple[float, float]]
    pi: tuple[float, float] | None = None
    allow_nonstationary: bool = False

    @model_validator(mode="before")
    @classmethod
    def _solve_pi(cls, data: Any) -> Any:
        return _fill_stationary(data, "P", "pi")

    @model_validator(mode="after")
    def _check_invariants(self) -> MarkovModel:
        settings = get_settings()
        _check_stochastic("P", self.P, settings.prob_sum_tol)
        if self.pi is None:
            raise ValueError("pi is required")
        _check_probability_vector("pi", self.pi, settings.prob_sum_tol)
        if not self.allow_nonstationary:
            residual = float(np.max(np.abs(self.pi_array @ self.P_array - self.pi_array)))
            if residual > settings.stationarity_tol:
                raise ValueError(f"pi is not stationary for P (residual {residual:.3e})")
        return self

    @cached_property
    def P_array(self) -> FloatArray:
        return np.asarray(self.P, dtype=np.float64)

    @cached_property
    def pi_array(self) -> FloatArray:
        return np.asarray(self.pi, dtype=np.float64)


class HiddenMarkovModel(_FrozenModel):
    """Stationary hidden chain with deterministic bit emission per hidden state."""

    type: Literal["hidden_markov"] = "hidden_markov"
    Q: tuple[tuple[float, ...], ...]
    emit: tuple[int, ...]
    pi_h: tuple[float, ...] | None = None
    allow_nonstationary: bool = False

    @model_validator(mode="before")
    @classmethod
    def _solve_pi_h(cls, data: Any) -> Any:
        return _fill_stationary(data, "Q", "pi_h")

    @model_validator(mode="after")
    def _check_invariants(self) -> HiddenMarkovModel:
        settings = get_settings()
        m = len(self.Q)
        if m == 0:
            raise ValueError("Q must have at least one hidden state")
        _check_stochastic("Q", self.Q, settings.prob_sum_tol)
        if len(self.emit) != m or any(b not in (0, 1) for b in self.emit):
            raise ValueError(f"emit must map each of the {m} hidden states to 0 or 1")
        if self.pi_h is None:
            raise ValueError("pi_h is required")
        if len(self.pi_h) != m:
            raise ValueError(f"pi_h has {len(self.pi_h)} entries, expected {m}")
        _check_probability_vector("pi_h", self.pi_h, settings.prob_sum_tol)
        if not self.allow_nonstationary:
            residual = float(np.max(np.abs(self.pi_array @ self.Q_array - self.pi_array)))
            if residual > settings.stationarity_tol:
                raise ValueError(f"pi_h is not stationary for Q (residual {residual:.3e})")
        return self

    @property
    def n_states(self) -> int:
        return len(self.Q)

    @cached_property
    def Q_array(self) -> FloatArray:
        return np.asarray(self.Q, dtype=np.float64)

    @cached_property
    def pi_array(self) -> FloatArray:
        return np.asarray(self.pi_h, dtype=np.float64)

    @cached_property
    def emission_masks(self) -> FloatArray:
        """Row b is the 0/1 indicator of hidden states emitting bit b."""
        emit = np.asarray(self.emit)
        return np.stack([(emit == 0), (emit == 1)]).astype(np.float64)


ComponentModel = Annotated[
    BernoulliModel | MarkovModel | HiddenMarkovModel,
    Field(discriminator="type"),
]


class MixtureModel(_FrozenModel):
    """Convex combination of ergodic components; the canonical non-ergodic measure."""

    type: Literal["mixture"] = "mixture"
    weights: tuple[float, ...]
    components: tuple[ComponentModel, ...]

    @model_validator(mode="after")
    def _check_invariants(self) -> MixtureModel:
        if not self.components:
            raise ValueError("mixture needs at least one component")
        if len(self.weights) != len(self.components):
            raise ValueError(
                f"{len(self.weights)} weights for {len(self.components)} components"
            )
        _check_probability_vector("weights", self.weights, get_settings().prob_sum_tol)
        return self

    @cached_property
    def log_weights(self) -> FloatArray:
        with np.errstate(divide="ignore"):
            return np.log2(np.asarray(self.weights, dtype=np.float64))


MeasureModel = Annotated[
    BernoulliModel | MarkovModel | HiddenMarkovModel | MixtureModel,
    Field(discriminator="type"),
]

MEASURE_ADAPTER: TypeAdapter[MeasureModel] = TypeAdapter(MeasureModel)
