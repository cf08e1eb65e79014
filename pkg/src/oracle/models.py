from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from pydantic import BaseModel, Field

ScoreVector = Tuple[int, ...]


@dataclass(frozen=True, slots=True, eq=False)
class JointLaw:
    """Exact joint law of the score vector on the integer lattice (units of 1/k).

    Probabilities are integer weights over one common denominator `total`.
    """

    n: int
    denominator: int
    weights: Dict[ScoreVector, int]
    total: int

    def probability(self, scores: ScoreVector) -> Fraction:
        return Fraction(self.weights.get(tuple(scores), 0), self.total)

    def probabilities(self) -> Dict[ScoreVector, Fraction]:
        return {scores: Fraction(w, self.total) for scores, w in self.weights.items()}

    def sorted_law(self) -> Dict[ScoreVector, Fraction]:
        """Law of the score multiset, keyed by the nonincreasing score vector."""
        merged: Dict[ScoreVector, int] = {}
        for scores, w in self.weights.items():
            key = tuple(sorted(scores, reverse=True))
            merged[key] = merged.get(key, 0) + w
        return {scores: Fraction(w, self.total) for scores, w in merged.items()}

    def max_index(self) -> int:
        return max(max(scores) for scores in self.weights)


class CheckReport(BaseModel):
    """Outcome of one exact verification check."""

    name: str
    grid_size: int = 0
    max_violation_exact: str = "0"
    max_violation: float = 0.0
    passed: bool = True
    skipped: bool = False
    detail: str = ""


class OrthantReport(BaseModel):
    """NLOD and NUOD checks on the full lattice grid."""

    lower: CheckReport
    upper: CheckReport

    @property
    def passed(self) -> bool:
        return self.lower.passed and self.upper.passed


class VerificationReport(BaseModel):
    """Every check of a verification suite run."""

    checks: List[CheckReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed or check.skipped for check in self.checks)

    def failed(self) -> List[CheckReport]:
        return [check for check in self.checks if not check.passed and not check.skipped]
