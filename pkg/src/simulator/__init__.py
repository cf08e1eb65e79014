"""Monte Carlo tournaments, exceedance counts and order statistics."""

from .config import SimulatorConfig
from .exceptions import ConfigError, ConservationError
from .experiment import RunningMoments, empirical_tv, run_experiment
from .models import (
    ORDER_STAT_COLUMNS,
    ORDER_STAT_SCHEMA,
    W_COLUMNS,
    W_HISTOGRAM_MAX,
    W_SCHEMA,
    HuberSummary,
    OrderStatCdfPoint,
    OrderStatSummary,
    SimConfig,
    SimReport,
    WHistogram,
)
from .sampling import AliasSampler, replicate_stream
from .tournament import exceedance_count, simulate_tournament

__all__ = [
    "AliasSampler",
    "ConfigError",
    "ConservationError",
    "HuberSummary",
    "ORDER_STAT_COLUMNS",
    "ORDER_STAT_SCHEMA",
    "OrderStatCdfPoint",
    "OrderStatSummary",
    "RunningMoments",
    "SimConfig",
    "SimReport",
    "SimulatorConfig",
    "W_COLUMNS",
    "W_HISTOGRAM_MAX",
    "W_SCHEMA",
    "WHistogram",
    "empirical_tv",
    "exceedance_count",
    "replicate_stream",
    "run_experiment",
    "simulate_tournament",
]
