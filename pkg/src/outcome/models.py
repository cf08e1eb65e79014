from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class ViolationKind(str, Enum):
    """Named invariants an outcome model can break."""

    ASYMMETRIC_SUPPORT = "AsymmetricSupport"
    NONPOSITIVE_WEIGHT = "NonpositiveWeight"
    WEIGHTS_NOT_NORMALIZED = "WeightsNotNormalized"
    DEGENERATE_SUPPORT = "DegenerateSupport"
    MALFORMED_SUPPORT = "MalformedSupport"


class OutcomeModel(BaseModel):
    """Law of a single match reward X_ij on the lattice {0, 1/k, ..., 1}.

    Construction only checks types; `validate` checks the model invariants.
    """

    model_config = ConfigDict(frozen=True)

    denominator: int = Field(..., description="Common denominator k of the support")
    support: List[Tuple[int, float]] = Field(
        ..., description="(numerator m, weight w) pairs, m strictly increasing"
    )
    weights_exact: Optional[List[Tuple[int, int]]] = Field(
        default=None,
        description="Exact weights as (p_num, p_den), aligned with support",
    )
    name: str = Field(default="custom", description="Identifier used in reports")

    @property
    def numerators(self) -> np.ndarray:
        return np.array([m for m, _ in self.support], dtype=np.int64)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.support], dtype=np.float64)

    @property
    def has_exact_weights(self) -> bool:
        return self.weights_exact is not None

    def exact_weights(self) -> Optional[List[Fraction]]:
        if self.weights_exact is None:
            return None
        return [Fraction(num, den) for num, den in self.weights_exact]

    def size(self) -> int:
        return len(self.support)


class ModelMoments(BaseModel):
    """Mean and standard deviation of one match reward, in score units."""

    model_config = ConfigDict(frozen=True)

    mu: float
    sigma: float


class Violation(BaseModel):
    """One broken invariant with a human-readable explanation."""

    kind: ViolationKind
    message: str


class ValidationOutcome(BaseModel):
    """Result of validating an outcome model."""

    violations: List[Violation] = Field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def kinds(self) -> List[ViolationKind]:
        return [violation.kind for violation in self.violations]
