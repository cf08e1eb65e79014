from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np

from src.asymptotics import DomainError, norming, predicted_lambda
from src.logger import get_logger
from src.outcome import OutcomeModel, moments

from .config import EngineConfig
from .lattice import LatticePmf, SurvivalFunction, base_pmf, convolve, convolve_power
from .models import ExceedanceReport, PairDecomposition

_logger = get_logger()

MIN_PAIR_PLAYERS = 4
NEGATIVE_ROUNDOFF = 1e-12


def score_pmf(
    model: OutcomeModel, n: int, config: Optional[EngineConfig] = None
) -> LatticePmf:
    """Law of one player's score s_i(n), the sum of n - 1 match rewards."""
    if n < 2:
        raise DomainError(f"score_pmf needs n >= 2, got {n}")
    return convolve_power(base_pmf(model), n - 1, config)


def raw_threshold(model: OutcomeModel, n: int, t: float) -> float:
    """Raw-score cutoff T with {s* > x_n(t)} = {s > T}."""
    stats = moments(model)
    return (n - 1) * stats.mu + math.sqrt(n - 1) * stats.sigma * norming(n).x(t)


def t_for_threshold(model: OutcomeModel, n: int, threshold: float) -> float:
    """Gumbel coordinate t whose raw threshold equals `threshold`."""
    stats = moments(model)
    constants = norming(n)
    x = (threshold - (n - 1) * stats.mu) / (math.sqrt(n - 1) * stats.sigma)
    return (x - constants.b_n) / constants.a_n


def _decompose(
    model: OutcomeModel,
    n: int,
    threshold: float,
    rest: LatticePmf,
    config: EngineConfig,
) -> PairDecomposition:
    # s_1 = X_12 + R_1 and s_2 = (1 - X_12) + R_2 on the raw scale, so in lattice
    # units s_1 > T iff R_1 > kT - m and s_2 > T iff R_2 > kT - k + m.
    k = model.denominator
    stats = moments(model)
    tail = SurvivalFunction(rest, config.near_atom_epsilon)
    units = threshold * k
    numerators = model.numerators
    a_values = np.empty(len(numerators))
    b_values = np.empty(len(numerators))
    near_atom = False
    for index, m in enumerate(numerators):
        a_lookup = tail.exceeding_units(units - m)
        b_lookup = tail.exceeding_units(units - k + m)
        a_values[index] = a_lookup.exclusive
        b_values[index] = b_lookup.exclusive
        near_atom = near_atom or a_lookup.near_atom or b_lookup.near_atom
    return PairDecomposition(
        alpha_n=math.sqrt((n - 1) / (n - 2)),
        r_tail=tail,
        y_values=(numerators / k - stats.mu) / stats.sigma,
        weights=model.weights,
        a_values=a_values,
        b_values=b_values,
        near_atom=near_atom,
    )


def pair_covariance(
    model: OutcomeModel,
    n: int,
    threshold_raw: float,
    config: Optional[EngineConfig] = None,
) -> Tuple[float, PairDecomposition]:
    """Cov(I_1, I_2) of two players' exceedance indicators at a raw threshold.

    Conditions on the mutual match; the remaining n - 2 outcomes of each player
    are independent, so one pmf of their sum serves both players.
    """
    if n < MIN_PAIR_PLAYERS:
        raise DomainError(f"pair_covariance needs n >= {MIN_PAIR_PLAYERS}, got {n}")
    config = config or EngineConfig()
    rest = convolve_power(base_pmf(model), n - 2, config)
    decomposition = _decompose(model, n, threshold_raw, rest, config)
    return decomposition.covariance(), decomposition


def _clamped(name: str, value: float, n: int, t: float) -> float:
    """Clip a nonnegative quantity at zero, warning when it went negative beyond roundoff."""
    if value < -NEGATIVE_ROUNDOFF:
        _logger.warning(f"{name} came out negative for n={n}, t={t}: {value:.3e}; clipped to 0")
    return max(value, 0.0)


def _report_from(
    model: OutcomeModel,
    n: int,
    t: float,
    rest: LatticePmf,
    config: EngineConfig,
) -> ExceedanceReport:
    threshold = raw_threshold(model, n, t)
    x = norming(n).x(t)
    scores = convolve(rest, base_pmf(model), config)
    lookup = SurvivalFunction(scores, config.near_atom_epsilon).exceeding(threshold)
    p_n = lookup.exclusive
    decomposition = _decompose(model, n, threshold, rest, config)
    near_atom = lookup.near_atom or decomposition.near_atom
    if near_atom:
        _logger.warning(f"Threshold for n={n}, t={t} sits on a lattice atom")

    if p_n <= 0.0:
        _logger.warning(f"Degenerate threshold for n={n}, t={t}: p_n = 0")
        return ExceedanceReport(
            model_id=model.name,
            n=n,
            t=t,
            x_n=x,
            raw_threshold=threshold,
            p_n=0.0,
            lambda_n=0.0,
            pair_cov=0.0,
            var_W=0.0,
            stein_bound=0.0,
            mean_mismatch_bound=0.0,
            combined_bound=0.0,
            threshold_near_atom=near_atom,
            p_n_inclusive=lookup.inclusive if near_atom else None,
            cleanup_mass=scores.cleanup_mass,
            degenerate_threshold=True,
        )

    cov = decomposition.covariance()
    lambda_n = n * p_n
    var_w = _clamped("var_W", n * p_n * (1.0 - p_n) + n * (n - 1) * cov, n, t)
    stein = _clamped("stein_bound", (1.0 - math.exp(-lambda_n)) * (1.0 - var_w / lambda_n), n, t)
    mismatch = abs(lambda_n - predicted_lambda(t))
    return ExceedanceReport(
        model_id=model.name,
        n=n,
        t=t,
        x_n=x,
        raw_threshold=threshold,
        p_n=p_n,
        lambda_n=lambda_n,
        pair_cov=cov,
        var_W=var_w,
        stein_bound=stein,
        mean_mismatch_bound=mismatch,
        combined_bound=stein + mismatch,
        threshold_near_atom=near_atom,
        p_n_inclusive=lookup.inclusive if near_atom else None,
        cleanup_mass=scores.cleanup_mass,
    )


def exceedance_report(
    model: OutcomeModel, n: int, t: float, config: Optional[EngineConfig] = None
) -> ExceedanceReport:
    """Exact p_n(t), lambda_n(t), Cov(I_1, I_2), Var(W_n(t)) and the TV bounds."""
    if n < MIN_PAIR_PLAYERS:
        raise DomainError(f"exceedance_report needs n >= {MIN_PAIR_PLAYERS}, got {n}")
    config = config or EngineConfig()
    rest = convolve_power(base_pmf(model), n - 2, config)
    return _report_from(model, n, t, rest, config)


def exceedance_reports(
    model: OutcomeModel, n: int, ts: list[float], config: Optional[EngineConfig] = None
) -> list[ExceedanceReport]:
    """Reports for several t at one n, sharing a single convolution."""
    if n < MIN_PAIR_PLAYERS:
        raise DomainError(f"exceedance_report needs n >= {MIN_PAIR_PLAYERS}, got {n}")
    config = config or EngineConfig()
    rest = convolve_power(base_pmf(model), n - 2, config)
    return [_report_from(model, n, t, rest, config) for t in ts]
