from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class NormingConstants(BaseModel):
    """Gumbel-type centering b_n and scaling a_n for n equally strong players."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=3)
    a_n: float = Field(..., gt=0)
    b_n: float

    def x(self, t: float) -> float:
        """Threshold x_n(t) = b_n + a_n t on the standardized scale."""
        return self.b_n + self.a_n * t


class LimitSpec(BaseModel):
    """Gumbel coordinate t and order-statistic depth j (j = 0 is the maximum)."""

    model_config = ConfigDict(frozen=True)

    t: float
    j: int = Field(default=0, ge=0)
