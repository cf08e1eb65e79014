"""Closed-form limits and leading-order predictions."""

from .exceptions import DomainError
from .limits import (
    mills_tail,
    order_stat_limit_cdf,
    poisson_pmf,
    poisson_pmf_array,
    poisson_support_limit,
    poisson_tv,
)
from .models import LimitSpec, NormingConstants
from .norming import (
    huber_centering,
    norming,
    phi_xn_asymptotic,
    predicted_lambda,
    predicted_pair_cov,
    rate_envelope,
    x_n,
)

__all__ = [
    "DomainError",
    "LimitSpec",
    "NormingConstants",
    "huber_centering",
    "mills_tail",
    "norming",
    "order_stat_limit_cdf",
    "phi_xn_asymptotic",
    "poisson_pmf",
    "poisson_pmf_array",
    "poisson_support_limit",
    "poisson_tv",
    "predicted_lambda",
    "predicted_pair_cov",
    "rate_envelope",
    "x_n",
]
