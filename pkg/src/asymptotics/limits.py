from __future__ import annotations

import math

import numpy as np
from scipy import special, stats

from .exceptions import DomainError
from .models import LimitSpec


def poisson_pmf(lam: float, k: int) -> float:
    """P(Poisson(lam) = k), evaluated in log space."""
    if lam < 0 or k < 0:
        raise DomainError(f"poisson_pmf needs lam >= 0 and k >= 0, got ({lam}, {k})")
    return float(np.exp(special.xlogy(k, lam) - lam - special.gammaln(k + 1)))


def poisson_pmf_array(lam: float, k_max: int) -> np.ndarray:
    """Vector of P(Poisson(lam) = k) for k = 0..k_max."""
    if lam < 0:
        raise DomainError(f"lam must be nonnegative, got {lam}")
    ks = np.arange(k_max + 1)
    return np.exp(special.xlogy(ks, lam) - lam - special.gammaln(ks + 1))


def poisson_support_limit(lam: float) -> int:
    """Truncation point beyond which the Poisson tail is below 1e-12."""
    return int(math.ceil(lam + 40.0 * math.sqrt(lam) + 40.0))


def order_stat_limit_cdf(spec: LimitSpec) -> float:
    """exp(-e^{-t}) * sum_{k<=j} e^{-tk}/k!, the limit law of the (j+1)-th largest score."""
    ks = np.arange(spec.j + 1)
    lam = math.exp(-spec.t) if spec.t > -700.0 else math.inf
    if math.isinf(lam):
        return 0.0
    log_terms = -lam - spec.t * ks - special.gammaln(ks + 1)
    return float(min(1.0, np.exp(special.logsumexp(log_terms))))


def mills_tail(x: float) -> float:
    """Two-term Mills approximation phi(x)/x (1 - 1/x^2) of the normal tail.

    This is an approximation to 1 - Phi(x), not the exact tail.
    """
    if x <= 0:
        raise DomainError(f"mills_tail needs x > 0, got {x}")
    return float(stats.norm.pdf(x) / x * (1.0 - 1.0 / x**2))


def poisson_tv(lam: float, mu: float) -> float:
    """Total variation distance between Poisson(lam) and Poisson(mu)."""
    if lam < 0 or mu < 0:
        raise DomainError(f"Poisson means must be nonnegative, got ({lam}, {mu})")
    if math.isinf(lam) or math.isinf(mu):
        return 0.0 if lam == mu else 1.0
    k_max = poisson_support_limit(max(lam, mu))
    diff = np.abs(poisson_pmf_array(lam, k_max) - poisson_pmf_array(mu, k_max))
    return float(min(1.0, 0.5 * math.fsum(diff)))
