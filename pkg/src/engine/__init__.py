"""Exact finite-n computation on the score lattice."""

from .config import EngineConfig
from .exact import (
    exceedance_report,
    exceedance_reports,
    pair_covariance,
    raw_threshold,
    score_pmf,
    t_for_threshold,
)
from .exceptions import CapacityError, LatticeMismatchError
from .lattice import (
    LatticePmf,
    SurvivalFunction,
    TailLookup,
    base_pmf,
    convolve,
    convolve_power,
    first_index_above,
    tail_prob,
)
from .models import (
    EXCEEDANCE_COLUMNS,
    EXCEEDANCE_SCHEMA,
    ExceedanceReport,
    PairDecomposition,
)
from .sweep import exact_sweep

__all__ = [
    "CapacityError",
    "EXCEEDANCE_COLUMNS",
    "EXCEEDANCE_SCHEMA",
    "EngineConfig",
    "ExceedanceReport",
    "LatticeMismatchError",
    "LatticePmf",
    "PairDecomposition",
    "SurvivalFunction",
    "TailLookup",
    "base_pmf",
    "convolve",
    "convolve_power",
    "exact_sweep",
    "exceedance_report",
    "exceedance_reports",
    "first_index_above",
    "pair_covariance",
    "raw_threshold",
    "score_pmf",
    "t_for_threshold",
    "tail_prob",
]
