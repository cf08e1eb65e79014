from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Tuple

from pydantic import ValidationError

from src.outcome import PRESETS, OutcomeModel, require_valid

from .exceptions import UsageError


def _fraction(value: Any) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"Not a rational weight: {value!r}") from exc


def _preset(data: Dict[str, Any]) -> OutcomeModel:
    name = data["preset"]
    if name not in PRESETS:
        raise UsageError(f"Unknown preset {name!r}; choose from {sorted(PRESETS)}")
    arguments = {key: value for key, value in data.items() if key != "preset"}
    if "draw_probability" in arguments:
        arguments["draw_probability"] = _fraction(arguments["draw_probability"])
    try:
        return PRESETS[name](**arguments)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"Bad arguments for preset {name!r}: {exc}") from exc


def model_from_data(data: Dict[str, Any]) -> OutcomeModel:
    """Build a model from a mapping.

    Either names a preset (``{"preset": "chess", "draw_probability": "1/2"}``)
    or lists ``denominator`` and ``support`` as ``[numerator, weight]`` pairs.
    Weights written as strings (``"1/4"``) are taken as exact rationals; when
    every weight is exact the model carries exact weights. ``support_exact``
    (``[numerator, [p_num, p_den]]`` pairs) may replace ``support``.
    """
    if "preset" in data:
        model = _preset(data)
    else:
        try:
            if "support_exact" in data and "support" not in data:
                data = {
                    **data,
                    "support": [[m, f"{num}/{den}"] for m, (num, den) in data["support_exact"]],
                }
            pairs: List[Tuple[int, Any]] = [(int(m), w) for m, w in data["support"]]
            exact = all(isinstance(w, (str, int)) for _, w in pairs)
            weights = [_fraction(w) if exact else float(w) for _, w in pairs]
            model = OutcomeModel(
                denominator=int(data["denominator"]),
                support=[(m, float(w)) for (m, _), w in zip(pairs, weights)],
                weights_exact=(
                    [(w.numerator, w.denominator) for w in weights] if exact else None
                ),
                name=str(data.get("name", "custom")),
            )
        except (KeyError, TypeError, ValueError, ValidationError) as exc:
            if isinstance(exc, UsageError):
                raise
            raise UsageError(f"Malformed model description: {exc}") from exc
    return require_valid(model)


def load_model(source: str) -> OutcomeModel:
    """Resolve ``--model``: a preset name or a path to a JSON model file."""
    if source in PRESETS:
        return require_valid(PRESETS[source]())
    path = Path(source)
    if not path.is_file():
        raise UsageError(f"Model file not found and not a preset: {source!r}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"Model file {source!r} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"Model file {source!r} must hold a JSON object")
    return model_from_data(data)


def load_json_object(source: str) -> Dict[str, Any]:
    path = Path(source)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise UsageError(f"Config file not found: {source!r}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"Config file {source!r} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"Config file {source!r} must hold a JSON object")
    return data
