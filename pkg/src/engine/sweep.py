from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

from src.logger import get_logger
from src.outcome import OutcomeModel

from .config import EngineConfig
from .exact import exceedance_reports
from .exceptions import CapacityError
from .models import ExceedanceReport

_logger = get_logger()


def _reports_for_n(
    model: OutcomeModel, n: int, ts: List[float], config: EngineConfig
) -> List[ExceedanceReport]:
    try:
        reports = exceedance_reports(model, n, ts, config)
    except CapacityError as exc:
        raise CapacityError(exc.requested, exc.budget, context=f"n={n}, t={ts}") from exc
    _logger.info(f"Exact reports done for model={model.name}, n={n}")
    return reports


def exact_sweep(
    model: OutcomeModel,
    ns: Sequence[int],
    ts: Sequence[float],
    *,
    workers: int = 1,
    config: Optional[EngineConfig] = None,
) -> List[ExceedanceReport]:
    """Exceedance reports over an (n, t) grid, ordered by n then t.

    Each n is an independent job; all t at that n share one convolution.
    """
    config = config or EngineConfig()
    ns = list(ns)
    ts = [float(t) for t in ts]
    if workers <= 1 or len(ns) <= 1:
        batches = [_reports_for_n(model, n, ts, config) for n in ns]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_reports_for_n, model, n, ts, config) for n in ns]
            batches = [future.result() for future in futures]
    return [report for batch in batches for report in batch]
