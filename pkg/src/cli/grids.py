"""Grid specifications for n and t.

Accepted forms: comma lists (``100,1000``), ``lin:start:stop:count``,
``geom:start:stop:count`` and ``log2:a:b`` (powers 2^a through 2^b).
"""

from __future__ import annotations

import math
from typing import List

import numpy as np

from .exceptions import UsageError


def _number(text: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise UsageError(f"Not a number in grid: {text!r}") from exc
    if not math.isfinite(value):
        raise UsageError(f"Grid values must be finite, got {text!r}")
    return value


def _count(text: str) -> int:
    try:
        count = int(text)
    except ValueError as exc:
        raise UsageError(f"Grid count must be an integer, got {text!r}") from exc
    if count < 1:
        raise UsageError(f"Grid count must be positive, got {count}")
    return count


def parse_grid(spec: str) -> List[float]:
    spec = spec.strip()
    if not spec:
        raise UsageError("Empty grid")
    kind, _, rest = spec.partition(":")
    if kind == "lin":
        parts = rest.split(":")
        if len(parts) != 3:
            raise UsageError(f"Expected lin:start:stop:count, got {spec!r}")
        return np.linspace(_number(parts[0]), _number(parts[1]), _count(parts[2])).tolist()
    if kind == "geom":
        parts = rest.split(":")
        if len(parts) != 3:
            raise UsageError(f"Expected geom:start:stop:count, got {spec!r}")
        start, stop = _number(parts[0]), _number(parts[1])
        if start <= 0 or stop <= 0:
            raise UsageError(f"Geometric grid bounds must be positive, got {spec!r}")
        return np.geomspace(start, stop, _count(parts[2])).tolist()
    if kind == "log2":
        parts = rest.split(":")
        if len(parts) != 2:
            raise UsageError(f"Expected log2:a:b, got {spec!r}")
        low, high = int(_number(parts[0])), int(_number(parts[1]))
        if high < low:
            raise UsageError(f"log2 grid needs a <= b, got {spec!r}")
        return [float(2**power) for power in range(low, high + 1)]
    values = [_number(item) for item in spec.split(",") if item.strip()]
    if not values:
        raise UsageError(f"Empty grid: {spec!r}")
    return values


def parse_n_grid(spec: str) -> List[int]:
    """Players grid: values rounded to integers, deduplicated, order kept."""
    seen: List[int] = []
    for value in parse_grid(spec):
        n = int(round(value))
        if n not in seen:
            seen.append(n)
    return seen


def parse_t_grid(spec: str) -> List[float]:
    return parse_grid(spec)
