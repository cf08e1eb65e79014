from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .models import CheckReport, JointLaw, OrthantReport


def _dense(joint: JointLaw, size: int) -> np.ndarray:
    grid = np.zeros((size,) * joint.n, dtype=object)
    grid[...] = 0
    for scores, weight in joint.weights.items():
        grid[scores] = weight
    return grid


def _cumulative(grid: np.ndarray, reverse: bool) -> np.ndarray:
    result = grid
    for axis in range(grid.ndim):
        if reverse:
            result = np.flip(np.cumsum(np.flip(result, axis=axis), axis=axis), axis=axis)
        else:
            result = np.cumsum(result, axis=axis)
    return result


def _marginal(joint: JointLaw, player: int, size: int) -> np.ndarray:
    marginal = np.zeros(size, dtype=object)
    marginal[...] = 0
    for scores, weight in joint.weights.items():
        marginal[scores[player]] += weight
    return marginal


def _violation_report(
    name: str, joint_table: np.ndarray, marginals: List[np.ndarray], total: int
) -> CheckReport:
    # joint/total <= prod(marginal/total)  <=>  joint * total^(n-1) <= prod(marginal)
    n = len(marginals)
    products = functools.reduce(np.multiply, np.ix_(*marginals))
    slack = joint_table * total ** (n - 1) - products
    worst = max(slack.ravel().tolist())
    worst_exact = Fraction(worst, total**n)
    return CheckReport(
        name=name,
        grid_size=int(joint_table.size),
        max_violation_exact=str(worst_exact),
        max_violation=float(worst_exact),
        passed=worst_exact <= 0,
    )


def check_nlod_nuod(joint: JointLaw, grid: Optional[Sequence[int]] = None) -> OrthantReport:
    """Exact lower and upper orthant inequalities at every lattice threshold vector.

    Lower thresholds run over the atoms 0..top and upper thresholds over -1..top-1,
    so both tables reach the points where a coordinate's own probability is 1 and
    every sub-vector of the scores is checked. `grid` restricts the per-coordinate
    thresholds to the given lattice indices; those two end points stay in.
    """
    size = joint.max_index() + 1
    table = _dense(joint, size)
    marginals = [_marginal(joint, player, size) for player in range(joint.n)]

    # Position p of the upper tables holds P(S > p - 1) = P(S >= p).
    lower_joint = _cumulative(table, reverse=False)
    lower_marginals = [np.cumsum(m) for m in marginals]
    upper_joint = _cumulative(table, reverse=True)
    upper_marginals = [np.flip(np.cumsum(np.flip(m))) for m in marginals]

    if grid is not None:
        chosen = {int(g) for g in grid if 0 <= g < size}
        lower_positions = np.array(sorted(chosen | {size - 1}), dtype=np.int64)
        upper_positions = np.array(
            sorted({0} | {g + 1 for g in chosen if g + 1 < size}), dtype=np.int64
        )
        lower_joint = lower_joint[np.ix_(*([lower_positions] * joint.n))]
        upper_joint = upper_joint[np.ix_(*([upper_positions] * joint.n))]
        lower_marginals = [m[lower_positions] for m in lower_marginals]
        upper_marginals = [m[upper_positions] for m in upper_marginals]

    return OrthantReport(
        lower=_violation_report("nlod", lower_joint, lower_marginals, joint.total),
        upper=_violation_report("nuod", upper_joint, upper_marginals, joint.total),
    )


def disjoint_splits(n: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Every ordered pair of disjoint nonempty index sets."""
    # Each index goes to the first set, the second set, or neither.
    for labels in itertools.product(range(3), repeat=n):
        first = tuple(i for i, label in enumerate(labels) if label == 1)
        second = tuple(i for i, label in enumerate(labels) if label == 2)
        if first and second:
            yield first, second


def _step_function(
    rng: np.random.Generator, indices: Tuple[int, ...], size: int
) -> Tuple[np.ndarray, np.ndarray, bool]:
    cuts = rng.integers(0, max(size - 1, 1), size=len(indices))
    coefficients = rng.integers(1, 4, size=len(indices))
    as_product = bool(rng.integers(0, 2))
    return cuts, coefficients, as_product


def _evaluate(
    states: np.ndarray,
    indices: Tuple[int, ...],
    function: Tuple[np.ndarray, np.ndarray, bool],
) -> np.ndarray:
    cuts, coefficients, as_product = function
    steps = states[:, list(indices)] > cuts[None, :]
    if as_product:
        return np.all(steps, axis=1).astype(np.int64)
    return steps.astype(np.int64) @ coefficients.astype(np.int64)


def check_na_spot(
    joint: JointLaw, functions_per_split: int = 50, seed: int = 0
) -> CheckReport:
    """Spot check of negative association on increasing step functions.

    For every ordered pair of disjoint index sets, draws `functions_per_split`
    pairs of coordinatewise increasing step functions (weighted sums or
    products of threshold indicators) and computes their covariance exactly.
    This is a partial check: negative association quantifies over all
    increasing functions.
    """
    rng = np.random.default_rng(seed)
    states = np.array(list(joint.weights.keys()), dtype=np.int64)
    weights = np.array(list(joint.weights.values()), dtype=object)
    size = joint.max_index() + 1
    total = joint.total
    worst: Optional[Fraction] = None
    evaluated = 0
    for first, second in disjoint_splits(joint.n):
        for _ in range(functions_per_split):
            f1 = _evaluate(states, first, _step_function(rng, first, size)).astype(object)
            f2 = _evaluate(states, second, _step_function(rng, second, size)).astype(object)
            mean_1 = int(np.sum(weights * f1))
            mean_2 = int(np.sum(weights * f2))
            mixed = int(np.sum(weights * f1 * f2))
            covariance = Fraction(mixed * total - mean_1 * mean_2, total * total)
            worst = covariance if worst is None or covariance > worst else worst
            evaluated += 1
    worst = worst if worst is not None else Fraction(0)
    return CheckReport(
        name="na_spot",
        grid_size=evaluated,
        max_violation_exact=str(worst),
        max_violation=float(worst),
        passed=worst <= 0,
        detail="partial check over random increasing step functions",
    )
