"""Norming constants and the leading terms of the finite-n predictions.

Every function here returns a leading term only; error-term constants are never
estimated. Natural logarithms throughout.
"""

from __future__ import annotations

import math
from sys import float_info

from .exceptions import DomainError
from .models import NormingConstants

MIN_PLAYERS = 3
MIN_PLAYERS_ENVELOPE = 16
_LOG_4PI = math.log(4.0 * math.pi)
_MAX_EXPONENT = math.log(float_info.max)


def _require_players(n: int, minimum: int = MIN_PLAYERS) -> None:
    if n < minimum:
        raise DomainError(f"n must be at least {minimum}, got {n}")


def _exp(x: float) -> float:
    """e^x, saturating at infinity instead of overflowing."""
    return math.inf if x > _MAX_EXPONENT else math.exp(x)


def norming(n: int) -> NormingConstants:
    _require_players(n)
    root = math.sqrt(2.0 * math.log(n))
    a_n = 1.0 / root
    b_n = root - (math.log(math.log(n)) + _LOG_4PI) / (2.0 * root)
    return NormingConstants(n=n, a_n=a_n, b_n=b_n)


def x_n(n: int, t: float) -> float:
    return norming(n).x(t)


def predicted_lambda(t: float) -> float:
    """Limit of the expected exceedance count, e^{-t}."""
    return _exp(-t)


def predicted_pair_cov(n: int, t: float) -> float:
    """Leading term -2 e^{-2t} ln n / n^3 of the pairwise indicator covariance."""
    _require_players(n)
    return -2.0 * _exp(-2.0 * t) * math.log(n) / float(n) ** 3


def rate_envelope(n: int) -> float:
    """(ln ln n)^2 / ln n, the total-variation rate without its constant."""
    _require_players(n, MIN_PLAYERS_ENVELOPE)
    log_n = math.log(n)
    return math.log(log_n) ** 2 / log_n


def huber_centering(n: int) -> float:
    """sqrt(2 ln(n - 1)), the centering of the maximal normalized score."""
    _require_players(n)
    return math.sqrt(2.0 * math.log(n - 1))


def phi_xn_asymptotic(n: int, t: float) -> float:
    """Leading term e^{-t} sqrt(2 ln n) / n of the normal density at x_n(t)."""
    _require_players(n)
    return _exp(-t) * math.sqrt(2.0 * math.log(n)) / n
