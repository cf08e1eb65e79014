from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .lattice import SurvivalFunction

EXCEEDANCE_SCHEMA = "exceedance_report/v1"

EXCEEDANCE_COLUMNS: List[str] = [
    "model_id",
    "n",
    "t",
    "x_n",
    "raw_threshold",
    "p_n",
    "lambda_n",
    "pair_cov",
    "var_W",
    "stein_bound",
    "mean_mismatch_bound",
    "combined_bound",
    "threshold_near_atom",
    "cleanup_mass",
]


class ExceedanceReport(BaseModel):
    """Exact exceedance quantities and Poisson-approximation bounds for one (model, n, t)."""

    model_config = ConfigDict(frozen=True, protected_namespaces=())

    model_id: str
    n: int
    t: float
    x_n: float = Field(..., description="Threshold on the standardized scale")
    raw_threshold: float = Field(..., description="Threshold on the raw score scale")
    p_n: float = Field(..., ge=0.0, le=1.0)
    lambda_n: float = Field(..., ge=0.0)
    pair_cov: float
    var_W: float = Field(..., ge=0.0)
    stein_bound: float = Field(..., ge=0.0)
    mean_mismatch_bound: float = Field(..., ge=0.0)
    combined_bound: float = Field(..., ge=0.0)
    threshold_near_atom: bool = False
    p_n_inclusive: Optional[float] = Field(
        default=None, description="P(s >= threshold), emitted when the threshold sits on an atom"
    )
    cleanup_mass: float = 0.0
    degenerate_threshold: bool = False

    def row(self) -> Dict[str, Any]:
        return {column: getattr(self, column) for column in EXCEEDANCE_COLUMNS}


@dataclass(frozen=True, slots=True, eq=False)
class PairDecomposition:
    """Conditional tails of two players given the outcome of their mutual match.

    For every support value y of Y = (X_12 - mu) / sigma, A holds
    P(s_1 > threshold | Y = y) and B holds P(s_2 > threshold | Y = y); both are
    read from the tail of R, the sum of the other n - 2 outcomes.
    """

    alpha_n: float
    r_tail: SurvivalFunction
    y_values: np.ndarray
    weights: np.ndarray
    a_values: np.ndarray
    b_values: np.ndarray
    near_atom: bool

    @property
    def m_values(self) -> np.ndarray:
        return (self.a_values + self.b_values) / 2.0

    @property
    def delta_values(self) -> np.ndarray:
        return (self.a_values - self.b_values) / 2.0

    def _expect(self, values: np.ndarray) -> float:
        return math.fsum(self.weights * values)

    def marginal_tail(self) -> float:
        """E[A(Y)], the single-player exceedance probability."""
        return self._expect(self.a_values)

    def joint_tail(self) -> float:
        """E[A(Y) B(Y)], the probability both players exceed."""
        return self._expect(self.a_values * self.b_values)

    def mean_delta(self) -> float:
        return self._expect(self.delta_values)

    def covariance(self) -> float:
        """E[AB] - E[A]^2."""
        return self.joint_tail() - self.marginal_tail() ** 2

    def covariance_m_delta(self) -> float:
        """Var(M) - E[Delta^2], the same covariance through the M/Delta identity."""
        m = self.m_values
        delta = self.delta_values
        return self._expect(m * m) - self._expect(m) ** 2 - self._expect(delta * delta)
