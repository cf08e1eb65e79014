from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.outcome import OutcomeModel, require_valid


def replicate_stream(seed: int, replicate: int) -> np.random.Generator:
    """Counter-based stream keyed by (seed, replicate).

    Each match consumes exactly one double, so the outcome of pair p in a
    replicate depends only on (seed, replicate, p).
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(replicate,))
    return np.random.Generator(np.random.Philox(sequence))


@dataclass(frozen=True, slots=True, eq=False)
class AliasSampler:
    """Walker/Vose alias table over the numerators of an outcome model."""

    numerators: np.ndarray
    accept: np.ndarray
    alias: np.ndarray

    @classmethod
    def from_model(cls, model: OutcomeModel) -> "AliasSampler":
        require_valid(model)
        weights = model.weights / model.weights.sum()
        size = len(weights)
        scaled = weights * size
        accept = np.ones(size)
        alias = np.arange(size)
        small = [i for i in range(size) if scaled[i] < 1.0]
        large = [i for i in range(size) if scaled[i] >= 1.0]
        while small and large:
            lo = small.pop()
            hi = large.pop()
            accept[lo] = scaled[lo]
            alias[lo] = hi
            scaled[hi] = scaled[hi] + scaled[lo] - 1.0
            if scaled[hi] < 1.0:
                small.append(hi)
            else:
                large.append(hi)
        # Leftovers are 1 up to rounding.
        for index in small + large:
            accept[index] = 1.0
        return cls(numerators=model.numerators, accept=accept, alias=alias)

    def draw(self, stream: np.random.Generator, size: int) -> np.ndarray:
        """`size` numerators, one uniform per draw."""
        columns = len(self.accept)
        scaled = stream.random(size) * columns
        column = np.minimum(scaled.astype(np.int64), columns - 1)
        fraction = scaled - column
        picked = np.where(fraction < self.accept[column], column, self.alias[column])
        return self.numerators[picked]
