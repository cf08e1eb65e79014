"""Brute-force exact enumeration of tiny tournaments."""

from .config import OracleConfig
from .dependence import check_na_spot, check_nlod_nuod, disjoint_splits
from .enumeration import (
    enumerate_joint,
    marginal_exact,
    marginal_from_joint,
    product_law,
    term_count,
)
from .exceedance import (
    WMoments,
    exact_W_distribution,
    max_score_law,
    pair_covariance_exact,
    pair_joint_tail,
    tail_exact,
    tv_to_poisson,
    w_moments,
)
from .exceptions import BudgetExceeded, MissingExactWeights
from .models import CheckReport, JointLaw, OrthantReport, ScoreVector, VerificationReport

__all__ = [
    "BudgetExceeded",
    "CheckReport",
    "JointLaw",
    "MissingExactWeights",
    "OracleConfig",
    "OrthantReport",
    "ScoreVector",
    "VerificationReport",
    "WMoments",
    "check_na_spot",
    "check_nlod_nuod",
    "disjoint_splits",
    "enumerate_joint",
    "exact_W_distribution",
    "marginal_exact",
    "marginal_from_joint",
    "max_score_law",
    "pair_covariance_exact",
    "pair_joint_tail",
    "product_law",
    "tail_exact",
    "tv_to_poisson",
    "w_moments",
]
