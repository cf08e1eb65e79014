from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from src.asymptotics import (
    DomainError,
    LimitSpec,
    huber_centering,
    norming,
    order_stat_limit_cdf,
    poisson_pmf_array,
    poisson_support_limit,
    predicted_lambda,
)
from src.engine import ExceedanceReport, first_index_above, raw_threshold
from src.logger import get_logger
from src.outcome import moments

from .config import SimulatorConfig
from .exceptions import ConfigError, ConservationError
from .models import (
    ORDER_STAT_BIN_WIDTH,
    ORDER_STAT_BINS,
    ORDER_STAT_LOWER,
    W_HISTOGRAM_MAX,
    HuberSummary,
    OrderStatCdfPoint,
    OrderStatSummary,
    SimConfig,
    SimReport,
    WHistogram,
)
from .sampling import AliasSampler, replicate_stream
from .tournament import simulate_tournament

_logger = get_logger()


def empirical_tv(hist: Sequence[int], lam: float, overflow: int = 0) -> float:
    """Total variation between a histogram over 0..K and Poisson(lam).

    The Poisson tail beyond K is counted in full, as is any overflow mass.
    """
    if lam < 0:
        raise DomainError(f"lam must be nonnegative, got {lam}")
    counts = np.asarray(hist, dtype=np.float64)
    total = counts.sum() + overflow
    if total <= 0:
        raise ValueError("Histogram must hold a positive count")
    if math.isinf(lam):
        return 1.0
    k_max = len(counts) - 1
    limit = max(k_max, poisson_support_limit(lam))
    pmf = poisson_pmf_array(lam, limit)
    inside = np.abs(counts / total - pmf[: k_max + 1])
    beyond = pmf[k_max + 1 :]
    distance = 0.5 * (math.fsum(inside) + math.fsum(beyond) + overflow / total)
    return float(min(max(distance, 0.0), 1.0))


@dataclass(slots=True)
class RunningMoments:
    """Count, mean and sum of squared deviations; merged with Chan's update."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    @classmethod
    def of(cls, values: np.ndarray) -> "RunningMoments":
        if values.size == 0:
            return cls()
        mean = float(values.mean())
        return cls(count=int(values.size), mean=mean, m2=float(((values - mean) ** 2).sum()))

    def merge(self, other: "RunningMoments") -> "RunningMoments":
        if other.count == 0:
            return RunningMoments(self.count, self.mean, self.m2)
        if self.count == 0:
            return RunningMoments(other.count, other.mean, other.m2)
        count = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / count
        m2 = self.m2 + other.m2 + delta * delta * self.count * other.count / count
        return RunningMoments(count, mean, m2)

    @property
    def variance(self) -> float:
        return self.m2 / (self.count - 1) if self.count > 1 else 0.0


@dataclass(slots=True)
class BatchAggregate:
    """Commutative, associative partial results of a batch of replicates."""

    w_counts: np.ndarray
    w_moments: List[RunningMoments]
    order_counts: np.ndarray
    order_moments: List[RunningMoments]
    huber: RunningMoments
    unique_winners: int

    def merge(self, other: "BatchAggregate") -> "BatchAggregate":
        return BatchAggregate(
            w_counts=self.w_counts + other.w_counts,
            w_moments=[a.merge(b) for a, b in zip(self.w_moments, other.w_moments)],
            order_counts=self.order_counts + other.order_counts,
            order_moments=[a.merge(b) for a, b in zip(self.order_moments, other.order_moments)],
            huber=self.huber.merge(other.huber),
            unique_winners=self.unique_winners + other.unique_winners,
        )


def _order_bins(values: np.ndarray) -> np.ndarray:
    # Bucket 0 is underflow, 1..ORDER_STAT_BINS the bins, last one overflow.
    positions = np.floor((values - ORDER_STAT_LOWER) / ORDER_STAT_BIN_WIDTH).astype(np.int64)
    return np.clip(positions + 1, 0, ORDER_STAT_BINS + 1)


def _run_batch(
    cfg: SimConfig, start: int, stop: int, settings: SimulatorConfig
) -> BatchAggregate:
    model = cfg.model
    n = cfg.n
    k = model.denominator
    stats = moments(model)
    constants = norming(n)
    centering = huber_centering(n)
    scale = math.sqrt(n - 1) * stats.sigma
    cutoffs = np.array(
        [first_index_above(raw_threshold(model, n, t) * k) for t in cfg.t_grid], dtype=np.int64
    )
    sampler = AliasSampler.from_model(model)
    expected_total = k * n * (n - 1) // 2
    depth = cfg.j_max + 1
    replicates = stop - start

    w_values = np.zeros((len(cfg.t_grid), replicates), dtype=np.int64)
    top_values = np.zeros((depth, replicates))
    maxima = np.zeros(replicates)
    unique_winners = 0
    for offset, replicate in enumerate(range(start, stop)):
        scores = simulate_tournament(
            model, n, replicate_stream(cfg.seed, replicate), sampler, settings.pair_chunk
        )
        if settings.checks_replicate(replicate):
            total = int(scores.sum())
            if total != expected_total:
                raise ConservationError(
                    f"Replicate {replicate}: scores sum to {total}, expected {expected_total}"
                )
        w_values[:, offset] = (scores[None, :] >= cutoffs[:, None]).sum(axis=1)
        top = np.sort(np.partition(scores, n - depth)[n - depth :])[::-1]
        standardized = (top / k - (n - 1) * stats.mu) / scale
        top_values[:, offset] = (standardized - constants.b_n) / constants.a_n
        maxima[offset] = standardized[0]
        unique_winners += int(np.count_nonzero(scores == top[0]) == 1)

    w_counts = np.zeros((len(cfg.t_grid), W_HISTOGRAM_MAX + 2), dtype=np.int64)
    for row, values in enumerate(w_values):
        w_counts[row] = np.bincount(
            np.minimum(values, W_HISTOGRAM_MAX + 1), minlength=W_HISTOGRAM_MAX + 2
        )
    order_counts = np.zeros((depth, ORDER_STAT_BINS + 2), dtype=np.int64)
    for row, values in enumerate(top_values):
        order_counts[row] = np.bincount(_order_bins(values), minlength=ORDER_STAT_BINS + 2)

    return BatchAggregate(
        w_counts=w_counts,
        w_moments=[RunningMoments.of(values.astype(np.float64)) for values in w_values],
        order_counts=order_counts,
        order_moments=[RunningMoments.of(values) for values in top_values],
        huber=RunningMoments.of(maxima - centering),
        unique_winners=unique_winners,
    )


def _check_config(cfg: SimConfig) -> None:
    if cfg.replicates < 1 or not cfg.t_grid or cfg.j_max < 0 or cfg.j_max >= cfg.n or cfg.n < 3:
        raise ConfigError(
            f"Invalid simulation config: n={cfg.n}, replicates={cfg.replicates}, "
            f"j_max={cfg.j_max}, t_grid={cfg.t_grid}"
        )
    if cfg.j_max > W_HISTOGRAM_MAX:
        raise ConfigError(f"j_max must not exceed {W_HISTOGRAM_MAX}, got {cfg.j_max}")
    if cfg.workers < 1:
        raise ConfigError(f"workers must be at least 1, got {cfg.workers}")


def _exact_lambda(
    exact_refs: Optional[Sequence[ExceedanceReport]], n: int, t: float
) -> Optional[float]:
    for report in exact_refs or []:
        if report.n == n and math.isclose(report.t, t, rel_tol=0.0, abs_tol=1e-12):
            return report.lambda_n
    return None


def run_experiment(
    cfg: SimConfig,
    exact_refs: Optional[Sequence[ExceedanceReport]] = None,
    settings: Optional[SimulatorConfig] = None,
) -> SimReport:
    """Run `cfg.replicates` independent tournaments and aggregate every statistic.

    Output depends on the config only: batches of `cfg.batch_size` replicates are
    merged in batch order whatever the number of workers.
    """
    _check_config(cfg)
    settings = settings or SimulatorConfig()
    began = time.perf_counter()
    bounds = [
        (start, min(start + cfg.batch_size, cfg.replicates))
        for start in range(0, cfg.replicates, cfg.batch_size)
    ]
    _logger.info(
        f"Simulating model={cfg.model.name}, n={cfg.n}, replicates={cfg.replicates}, "
        f"batch_size={cfg.batch_size}, batches={len(bounds)}, workers={cfg.workers}"
    )

    aggregate: Optional[BatchAggregate] = None
    if cfg.workers == 1 or len(bounds) == 1:
        for index, (start, stop) in enumerate(bounds):
            part = _run_batch(cfg, start, stop, settings)
            aggregate = part if aggregate is None else aggregate.merge(part)
            _logger.info(f"Batch {index + 1}/{len(bounds)} done")
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_run_batch, cfg, start, stop, settings) for start, stop in bounds]
            for index, future in enumerate(futures):
                part = future.result()
                aggregate = part if aggregate is None else aggregate.merge(part)
                _logger.info(f"Batch {index + 1}/{len(bounds)} done")
    assert aggregate is not None

    report = _summarize(cfg, aggregate, exact_refs)
    report.wall_time = time.perf_counter() - began
    return report


def _summarize(
    cfg: SimConfig,
    aggregate: BatchAggregate,
    exact_refs: Optional[Sequence[ExceedanceReport]],
) -> SimReport:
    w_histograms: List[WHistogram] = []
    for row, t in enumerate(cfg.t_grid):
        counts = aggregate.w_counts[row]
        histogram = [int(c) for c in counts[: W_HISTOGRAM_MAX + 1]]
        overflow = int(counts[W_HISTOGRAM_MAX + 1])
        lambda_exact = _exact_lambda(exact_refs, cfg.n, t)
        w_histograms.append(
            WHistogram(
                t=t,
                raw_threshold=raw_threshold(cfg.model, cfg.n, t),
                counts=histogram,
                overflow=overflow,
                mean=aggregate.w_moments[row].mean,
                variance=aggregate.w_moments[row].variance,
                tv_poisson_limit=empirical_tv(histogram, predicted_lambda(t), overflow),
                lambda_exact=lambda_exact,
                tv_poisson_exact=(
                    empirical_tv(histogram, lambda_exact, overflow)
                    if lambda_exact is not None
                    else None
                ),
            )
        )

    order_stats: List[OrderStatSummary] = []
    for j in range(cfg.j_max + 1):
        counts = aggregate.order_counts[j]
        stats = aggregate.order_moments[j]
        order_stats.append(
            OrderStatSummary(
                j=j,
                counts=[int(c) for c in counts[1 : ORDER_STAT_BINS + 1]],
                underflow=int(counts[0]),
                overflow=int(counts[ORDER_STAT_BINS + 1]),
                count=stats.count,
                mean=stats.mean,
                variance=stats.variance,
            )
        )

    # {M_{n,j} <= t} is exactly {W_n(t) <= j}.
    cdf_points: List[OrderStatCdfPoint] = []
    for j in range(cfg.j_max + 1):
        for row, t in enumerate(cfg.t_grid):
            counts = aggregate.w_counts[row]
            empirical = float(counts[: j + 1].sum()) / cfg.replicates
            limit = order_stat_limit_cdf(LimitSpec(t=t, j=j))
            cdf_points.append(
                OrderStatCdfPoint(j=j, t=t, empirical=empirical, limit=limit, gap=abs(empirical - limit))
            )

    return SimReport(
        model_id=cfg.model.name,
        n=cfg.n,
        replicates=cfg.replicates,
        seed=cfg.seed,
        j_max=cfg.j_max,
        batch_size=cfg.batch_size,
        w_histograms=w_histograms,
        order_stats=order_stats,
        order_stat_cdf=cdf_points,
        huber=HuberSummary(
            centering=huber_centering(cfg.n),
            count=aggregate.huber.count,
            mean=aggregate.huber.mean,
            variance=aggregate.huber.variance,
        ),
        unique_winner_count=aggregate.unique_winners,
        unique_winner_fraction=aggregate.unique_winners / cfg.replicates,
    )
