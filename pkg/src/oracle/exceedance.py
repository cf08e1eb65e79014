from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence

from scipy.stats import poisson

from src.engine import first_index_above

from .models import JointLaw


@dataclass(frozen=True, slots=True)
class WMoments:
    """Exact mean, variance and second factorial moment of an exceedance count."""

    mean: Fraction
    variance: Fraction
    factorial2: Fraction


def _cutoff(joint: JointLaw, raw_threshold: float) -> int:
    return first_index_above(raw_threshold * joint.denominator)


def exact_W_distribution(joint: JointLaw, raw_threshold: float) -> List[Fraction]:
    """Exact law of the number of players scoring strictly above `raw_threshold`.

    Returns P(W = 0), ..., P(W = n).
    """
    cutoff = _cutoff(joint, raw_threshold)
    weights = [0] * (joint.n + 1)
    for scores, weight in joint.weights.items():
        weights[sum(1 for s in scores if s >= cutoff)] += weight
    return [Fraction(w, joint.total) for w in weights]


def tail_exact(joint: JointLaw, raw_threshold: float, player: int = 0) -> Fraction:
    cutoff = _cutoff(joint, raw_threshold)
    weight = sum(w for scores, w in joint.weights.items() if scores[player] >= cutoff)
    return Fraction(weight, joint.total)


def pair_joint_tail(joint: JointLaw, i: int, j: int, raw_threshold: float) -> Fraction:
    """P(s_i > T, s_j > T) for two distinct players."""
    if i == j:
        raise ValueError("pair_joint_tail needs two distinct players")
    cutoff = _cutoff(joint, raw_threshold)
    weight = sum(
        w for scores, w in joint.weights.items() if scores[i] >= cutoff and scores[j] >= cutoff
    )
    return Fraction(weight, joint.total)


def pair_covariance_exact(joint: JointLaw, raw_threshold: float) -> Fraction:
    """Cov(I_1, I_2) of the exceedance indicators of the first two players."""
    marginal = tail_exact(joint, raw_threshold, 0)
    return pair_joint_tail(joint, 0, 1, raw_threshold) - marginal * marginal


def w_moments(w_pmf: Sequence[Fraction]) -> WMoments:
    mean = sum((k * p for k, p in enumerate(w_pmf)), Fraction(0))
    second = sum((k * k * p for k, p in enumerate(w_pmf)), Fraction(0))
    factorial2 = sum((k * (k - 1) * p for k, p in enumerate(w_pmf)), Fraction(0))
    return WMoments(mean=mean, variance=second - mean * mean, factorial2=factorial2)


def tv_to_poisson(w_pmf: Sequence[Fraction], lam: float) -> float:
    """Total variation distance between the exact W law and Poisson(lam).

    The Poisson mass above n, where W has none, enters the distance in full.
    """
    n = len(w_pmf) - 1
    pmf = poisson.pmf(range(n + 1), lam)
    overlap = sum(abs(float(p) - float(q)) for p, q in zip(w_pmf, pmf))
    return 0.5 * (overlap + float(poisson.sf(n, lam)))


def max_score_law(joint: JointLaw) -> Dict[int, Fraction]:
    """Exact law of the largest lattice score."""
    merged: Dict[int, int] = {}
    for scores, weight in joint.weights.items():
        top = max(scores)
        merged[top] = merged.get(top, 0) + weight
    return {index: Fraction(w, joint.total) for index, w in sorted(merged.items())}
