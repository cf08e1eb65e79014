from __future__ import annotations

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.outcome import OutcomeModel

from .exceptions import ConfigError

W_HISTOGRAM_MAX = 64
ORDER_STAT_LOWER = -10.0
ORDER_STAT_UPPER = 10.0
ORDER_STAT_BIN_WIDTH = 0.01
ORDER_STAT_BINS = 2000

W_SCHEMA = "sim_w_histogram/v1"
ORDER_STAT_SCHEMA = "sim_order_stat_histogram/v1"
W_COLUMNS = ["t", "k", "count"]
ORDER_STAT_COLUMNS = ["j", "bin", "lower", "upper", "count"]

MAX_SEED = 2**64 - 1
DEFAULT_BATCH_SIZE = 256


class SimConfig(BaseModel):
    """One Monte Carlo experiment and every setting its output depends on."""

    model_config = ConfigDict(frozen=True)

    model: OutcomeModel
    n: int = Field(..., ge=3)
    t_grid: List[float] = Field(..., min_length=1)
    j_max: int = Field(default=0, ge=0)
    replicates: int = Field(..., ge=1)
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    batch_size: int = Field(
        default=DEFAULT_BATCH_SIZE, ge=1, description="Replicates per batch; fixes the merge order of moments"
    )
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _depth_below_players(self) -> "SimConfig":
        if self.j_max >= self.n:
            raise ValueError(f"j_max must be below n, got j_max={self.j_max}, n={self.n}")
        return self

    @classmethod
    def parse(cls, data: Dict[str, Any]) -> "SimConfig":
        """Validate raw data, converting pydantic errors into ConfigError."""
        try:
            return cls.model_validate(data)
        except ValidationError as exc:
            raise ConfigError(str(exc)) from exc

    def deterministic_part(self) -> Dict[str, Any]:
        """Every field that can influence results; workers is excluded."""
        return self.model_dump(exclude={"workers"})


class WHistogram(BaseModel):
    """Empirical law of the exceedance count W_n(t) at one t."""

    t: float
    raw_threshold: float
    counts: List[int]
    overflow: int = 0
    mean: float
    variance: float
    tv_poisson_limit: float = Field(..., description="TV to Poisson(e^{-t})")
    lambda_exact: Optional[float] = None
    tv_poisson_exact: Optional[float] = Field(
        default=None, description="TV to Poisson(lambda_n) when an exact report was supplied"
    )

    @property
    def total(self) -> int:
        return sum(self.counts) + self.overflow


class OrderStatSummary(BaseModel):
    """Histogram and moments of M_{n,j}, the Gumbel-normalized (j+1)-th largest score."""

    j: int
    lower: float = ORDER_STAT_LOWER
    bin_width: float = ORDER_STAT_BIN_WIDTH
    counts: List[int]
    underflow: int = 0
    overflow: int = 0
    count: int
    mean: float
    variance: float


class OrderStatCdfPoint(BaseModel):
    """Empirical P(M_{n,j} <= t) beside its limit."""

    j: int
    t: float
    empirical: float
    limit: float
    gap: float


class HuberSummary(BaseModel):
    """Sample moments of s*_(n) - sqrt(2 ln(n - 1))."""

    centering: float
    count: int
    mean: float
    variance: float


class SimReport(BaseModel):
    """Aggregated outcome of one experiment, with seed provenance."""

    model_config = ConfigDict(protected_namespaces=())

    model_id: str
    n: int
    replicates: int
    seed: int
    j_max: int
    batch_size: int
    w_histograms: List[WHistogram]
    order_stats: List[OrderStatSummary]
    order_stat_cdf: List[OrderStatCdfPoint]
    huber: HuberSummary
    unique_winner_count: int
    unique_winner_fraction: float
    wall_time: float = Field(default=0.0, description="Seconds; not part of the deterministic output")

    def deterministic_dump(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude={"wall_time"})

    def w_rows(self) -> List[Dict[str, Any]]:
        rows: List[Dict[str, Any]] = []
        for histogram in self.w_histograms:
            for k, count in enumerate(histogram.counts):
                rows.append({"t": histogram.t, "k": str(k), "count": count})
            rows.append({"t": histogram.t, "k": f">{len(histogram.counts) - 1}", "count": histogram.overflow})
        return rows

    def order_stat_rows(self) -> List[Dict[str, Any]]:
        rows: List[Dict[str, Any]] = []
        for summary in self.order_stats:
            rows.append(
                {"j": summary.j, "bin": "underflow", "lower": "", "upper": summary.lower, "count": summary.underflow}
            )
            for index, count in enumerate(summary.counts):
                lower = summary.lower + index * summary.bin_width
                rows.append(
                    {
                        "j": summary.j,
                        "bin": str(index),
                        "lower": round(lower, 10),
                        "upper": round(lower + summary.bin_width, 10),
                        "count": count,
                    }
                )
            upper_edge = round(summary.lower + len(summary.counts) * summary.bin_width, 10)
            rows.append(
                {"j": summary.j, "bin": "overflow", "lower": upper_edge, "upper": "", "count": summary.overflow}
            )
        return rows
