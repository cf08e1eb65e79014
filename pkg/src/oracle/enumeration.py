from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.asymptotics import DomainError
from src.engine import LatticePmf
from src.logger import get_logger
from src.outcome import OutcomeModel, require_valid

from .config import OracleConfig
from .exceptions import BudgetExceeded, MissingExactWeights
from .models import JointLaw, ScoreVector

_logger = get_logger()

_INT64_SAFE = 2**62


def term_count(model: OutcomeModel, n: int) -> int:
    """Number of weighted tournaments |D|^(n choose 2)."""
    return model.size() ** (n * (n - 1) // 2)


def _pairs(n: int) -> Tuple[np.ndarray, np.ndarray]:
    rows, cols = np.triu_indices(n, k=1)
    return rows.astype(np.int64), cols.astype(np.int64)


def _enumerate_partition(
    numerators: Sequence[int],
    weights: Sequence[int],
    k: int,
    n: int,
    first_digit: int,
    block_size: int,
    exact_objects: bool,
) -> Dict[int, int]:
    """Joint weights of every tournament whose first match takes `first_digit`.

    Tournaments are mixed-radix digit vectors over the matches in row-major
    order; the remaining digits are enumerated in vectorized blocks.
    """
    size = len(numerators)
    rows, cols = _pairs(n)
    matches = len(rows)
    rest = matches - 1
    count = size**rest
    powers = np.array([size ** (rest - 1 - c) for c in range(rest)], dtype=np.int64)
    numerator_table = np.asarray(numerators, dtype=np.int64)
    weight_table = np.asarray(weights, dtype=object if exact_objects else np.int64)

    incidence_row = np.zeros((matches, n), dtype=np.int64)
    incidence_col = np.zeros((matches, n), dtype=np.int64)
    incidence_row[np.arange(matches), rows] = 1
    incidence_col[np.arange(matches), cols] = 1
    base = k * (n - 1) + 1
    multipliers = np.array([base**p for p in range(n)], dtype=np.int64)

    accumulated: Dict[int, int] = {}
    for start in range(0, count, block_size):
        index = np.arange(start, min(start + block_size, count), dtype=np.int64)
        digits = np.empty((index.size, matches), dtype=np.int64)
        digits[:, 0] = first_digit
        for c in range(rest):
            digits[:, c + 1] = (index // powers[c]) % size
        won = numerator_table[digits]
        scores = won @ incidence_row + (k - won) @ incidence_col
        term_weights = np.prod(weight_table[digits], axis=1)
        keys = scores @ multipliers
        unique, inverse = np.unique(keys, return_inverse=True)
        sums = np.zeros(unique.size, dtype=weight_table.dtype)
        np.add.at(sums, inverse.ravel(), term_weights)
        for key, weight in zip(unique.tolist(), sums.tolist()):
            accumulated[key] = accumulated.get(key, 0) + int(weight)
    return accumulated


def _decode(key: int, base: int, n: int) -> ScoreVector:
    scores = []
    for _ in range(n):
        key, value = divmod(key, base)
        scores.append(value)
    return tuple(scores)


def enumerate_joint(
    model: OutcomeModel,
    n: int,
    budget: Optional[int] = None,
    *,
    workers: int = 1,
    config: Optional[OracleConfig] = None,
) -> JointLaw:
    """Exact joint law of (s_1, ..., s_n) by enumerating every weighted tournament."""
    config = config or OracleConfig()
    budget = budget if budget is not None else config.term_budget
    exact = model.exact_weights()
    if exact is None:
        raise MissingExactWeights(f"Model {model.name!r} has no exact rational weights")
    require_valid(model)
    if n < 2:
        raise DomainError(f"enumerate_joint needs n >= 2, got {n}")
    required = term_count(model, n)
    if required > budget:
        raise BudgetExceeded(required=required, budget=budget)

    common = math.lcm(*(q.denominator for q in exact))
    integer_weights = [int(q * common) for q in exact]
    matches = n * (n - 1) // 2
    total = common**matches
    k = model.denominator
    base = k * (n - 1) + 1
    exact_objects = total >= _INT64_SAFE or base**n >= _INT64_SAFE
    arguments = [
        (model.numerators.tolist(), integer_weights, k, n, digit, config.block_size, exact_objects)
        for digit in range(model.size())
    ]
    _logger.info(f"Enumerating {required} tournaments for model={model.name}, n={n}")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partitions = list(pool.map(_enumerate_partition, *zip(*arguments)))
    else:
        partitions = [_enumerate_partition(*args) for args in arguments]

    merged: Dict[int, int] = {}
    for partition in partitions:
        for key, weight in partition.items():
            merged[key] = merged.get(key, 0) + weight
    weights = {_decode(key, base, n): weight for key, weight in merged.items()}
    return JointLaw(n=n, denominator=k, weights=weights, total=total)


def marginal_exact(joint: JointLaw, player: int) -> Dict[int, Fraction]:
    """Exact law of one player's lattice score."""
    if not 0 <= player < joint.n:
        raise IndexError(f"player must lie in [0, {joint.n}), got {player}")
    merged: Dict[int, int] = {}
    for scores, weight in joint.weights.items():
        merged[scores[player]] = merged.get(scores[player], 0) + weight
    return {index: Fraction(weight, joint.total) for index, weight in sorted(merged.items())}


def marginal_from_joint(joint: JointLaw, player: int) -> LatticePmf:
    """One player's score law as a float lattice pmf."""
    exact = marginal_exact(joint, player)
    first, last = min(exact), max(exact)
    probs = np.zeros(last - first + 1)
    for index, probability in exact.items():
        probs[index - first] = float(probability)
    return LatticePmf(step_denominator=joint.denominator, offset=first, probs=probs)


def product_law(marginals: List[Dict[int, Fraction]], denominator: int = 1) -> JointLaw:
    """Joint law of independent coordinates with the given exact marginals."""
    common = math.lcm(*(q.denominator for law in marginals for q in law.values()))
    weights: Dict[ScoreVector, int] = {(): 1}
    for law in marginals:
        step: Dict[ScoreVector, int] = {}
        for scores, weight in weights.items():
            for value, probability in law.items():
                step[scores + (value,)] = weight * int(probability * common)
        weights = step
    return JointLaw(
        n=len(marginals), denominator=denominator, weights=weights, total=common ** len(marginals)
    )
