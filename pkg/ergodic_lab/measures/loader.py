"""Measure specification files and canonical model builders.

A model file is a JSON document with ``type`` ∈ {bernoulli, markov,
hidden_markov, mixture} and the family's numeric fields. Probabilities may
be given as decimal strings; they are parsed to double precision.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import structlog
from pydantic import ValidationError

from ergodic_lab.core.errors import IoFailure, ModelValidationError
from ergodic_lab.schemas.measure import (
    MEASURE_ADAPTER,
    BernoulliModel,
    HiddenMarkovModel,
    MarkovModel,
    MeasureModel,
    MixtureModel,
)

logger = structlog.get_logger(__name__)


def parse_model(data: dict[str, Any]) -> MeasureModel:
    """Validate a model document.

    Raises:
        ModelValidationError: naming the first offending field.
    """
    try:
        return MEASURE_ADAPTER.validate_python(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        parts = [str(part) for part in first["loc"]]
        field = (first.get("ctx") or {}).get("field")
        if field:
            parts.append(str(field))
        location = ".".join(parts)
        raise ModelValidationError(
            f"invalid model: {first['msg']}",
            field=location,
            detail=str(first["msg"]),
        ) from exc


def load_model_file(path: str | Path) -> MeasureModel:
    """Read and validate a JSON model file."""
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read model file: {exc}", path=str(file_path)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelValidationError(
            f"model file is not valid JSON: {exc.msg}", field="", detail=f"line {exc.lineno}"
        ) from exc
    if not isinstance(data, dict):
        raise ModelValidationError("model file must hold a JSON object", field="")
    if not data.get("name"):
        data["name"] = file_path.stem
    model = parse_model(data)
    logger.info("model_loaded", path=str(file_path), model_id=model.model_id, type=model.type)
    return model


def dump_model(model: MeasureModel) -> dict[str, Any]:
    """JSON-compatible document that parse_model reads back."""
    return model.model_dump(mode="json")


# ── canonical models ───────────────────────────────


def golden_markov() -> MarkovModel:
    """P = [[0.9, 0.1], [0.5, 0.5]], π = (5/6, 1/6); entropy rate 0.557497 bits."""
    return MarkovModel(P=((0.9, 0.1), (0.5, 0.5)), name="markov_0.9_0.5")


def symmetric_mixture(p: float = 0.1) -> MixtureModel:
    """½ B(p) + ½ B(1 − p): shift-invariant, not ergodic."""
    return MixtureModel(
        weights=(0.5, 0.5),
        components=(BernoulliModel(p=p), BernoulliModel(p=1.0 - p)),
        name=f"mixture_{p}_{1.0 - p:g}",
    )


def noisy_regime_chain(switch: float = 0.01, flip: float = 0.05) -> HiddenMarkovModel:
    """Two slow regimes, each emitting its regime bit flipped with probability ``flip``.

    Hidden state 2·r + b means regime r just emitted b; emission is b.
    """
    stay = 1.0 - switch
    regime = ((stay, switch), (switch, stay))
    rows = []
    for r in (0, 1):
        for _b in (0, 1):
            row = []
            for r_next in (0, 1):
                for b_next in (0, 1):
                    emit_prob = 1.0 - flip if b_next == r_next else flip
                    row.append(regime[r][r_next] * emit_prob)
            rows.append(tuple(row))
    return HiddenMarkovModel(
        Q=tuple(rows),
        emit=(0, 1, 0, 1),
        name=f"noisy_regime_{switch:g}_{flip:g}",
    )
