from __future__ import annotations

from typing import Iterator, Optional, Tuple

import numpy as np

from src.engine import first_index_above
from src.outcome import OutcomeModel

from .sampling import AliasSampler

DEFAULT_PAIR_CHUNK = 1 << 20


def _row_blocks(n: int, chunk: int) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """Pairs (i, j), i < j, in row-major order, grouped in blocks of whole rows."""
    start = 0
    while start < n - 1:
        stop = start
        pairs = 0
        while stop < n - 1 and (pairs == 0 or pairs + (n - 1 - stop) <= chunk):
            pairs += n - 1 - stop
            stop += 1
        rows = np.arange(start, stop, dtype=np.int64)
        counts = n - 1 - rows
        firsts = np.cumsum(counts) - counts
        i_index = np.repeat(rows, counts)
        j_index = (
            np.arange(pairs, dtype=np.int64)
            - np.repeat(firsts, counts)
            + np.repeat(rows + 1, counts)
        )
        yield i_index, j_index
        start = stop


def simulate_tournament(
    model: OutcomeModel,
    n: int,
    stream: np.random.Generator,
    sampler: Optional[AliasSampler] = None,
    pair_chunk: int = DEFAULT_PAIR_CHUNK,
) -> np.ndarray:
    """One round robin: integer lattice scores (units of 1/k) of all n players.

    Pair {i, j} draws a from the model; i is credited a and j is credited 1 - a.
    """
    sampler = sampler or AliasSampler.from_model(model)
    k = model.denominator
    scores = np.zeros(n, dtype=np.int64)
    for i_index, j_index in _row_blocks(n, pair_chunk):
        won = sampler.draw(stream, len(i_index)).astype(np.float64)
        scores += np.rint(np.bincount(i_index, weights=won, minlength=n)).astype(np.int64)
        scores += np.rint(np.bincount(j_index, weights=k - won, minlength=n)).astype(np.int64)
    return scores


def exceedance_count(scores: np.ndarray, raw_threshold: float, denominator: int = 1) -> int:
    """Number of players whose score (lattice units of 1/denominator) is strictly above the threshold."""
    cutoff = first_index_above(raw_threshold * denominator)
    return int(np.count_nonzero(np.asarray(scores) >= cutoff))
