"""Oracle-versus-engine verification suite.

Each check enumerates a tiny tournament exactly and compares the result with
the convolution engine, or tests a negative-dependence property of the exact
joint law. Checks whose enumeration exceeds the term budget are reported as
skipped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from src.asymptotics import predicted_lambda
from src.engine import (
    EngineConfig,
    ExceedanceReport,
    exceedance_report,
    pair_covariance,
    score_pmf,
    t_for_threshold,
)
from src.logger import get_logger
from src.oracle import (
    CheckReport,
    JointLaw,
    OracleConfig,
    VerificationReport,
    check_na_spot,
    check_nlod_nuod,
    enumerate_joint,
    exact_W_distribution,
    marginal_exact,
    pair_joint_tail,
    tail_exact,
    term_count,
    tv_to_poisson,
    w_moments,
)
from src.outcome import OutcomeModel, chess, classical

_logger = get_logger()

TOLERANCE = 1e-12
THRESHOLD_POINTS = 20

CheckRunner = Callable[[OutcomeModel, int, JointLaw, EngineConfig], CheckReport]


@dataclass(frozen=True, slots=True)
class CheckDefinition:
    """One verification check bound to a model and a tournament size."""

    name: str
    model_factory: Callable[[], OutcomeModel]
    n: int
    runner: CheckRunner


class CheckRegistry:
    """Ordered container of check definitions."""

    def __init__(self) -> None:
        self._checks: Dict[str, CheckDefinition] = {}

    def register(self, check: CheckDefinition) -> None:
        if check.name in self._checks:
            raise KeyError(f"Check {check.name} is already registered")
        self._checks[check.name] = check

    def get(self, name: str) -> CheckDefinition:
        if name not in self._checks:
            raise KeyError(f"Check {name} is not registered")
        return self._checks[name]

    def all(self) -> List[CheckDefinition]:
        return list(self._checks.values())


def threshold_grid(n: int, points: int = THRESHOLD_POINTS) -> List[float]:
    """Raw thresholds spread across the score range [0, n - 1], off the half-lattice."""
    return (np.linspace(-0.5, n - 0.5, points) + 0.1).tolist()


def _report(name: str, worst: float, grid_size: int, detail: str = "") -> CheckReport:
    return CheckReport(
        name=name,
        grid_size=grid_size,
        max_violation_exact=repr(worst),
        max_violation=worst,
        passed=worst <= TOLERANCE,
        detail=detail,
    )


def check_marginals(
    model: OutcomeModel, n: int, joint: JointLaw, config: EngineConfig
) -> CheckReport:
    engine = score_pmf(model, n, config)
    worst = 0.0
    reference = marginal_exact(joint, 0)
    exchangeable = True
    for player in range(n):
        exact = marginal_exact(joint, player)
        exchangeable = exchangeable and exact == reference
        atoms = set(exact) | set(engine.indices.tolist())
        for index in atoms:
            worst = max(worst, abs(float(exact.get(index, Fraction(0))) - engine.prob_at(index)))
    if not exchangeable:
        worst = max(worst, 1.0)
    return _report(
        f"marginals/{model.name}/n={n}",
        worst,
        n,
        detail="players exchangeable" if exchangeable else "marginals differ across players",
    )


def check_pair_covariance(
    model: OutcomeModel, n: int, joint: JointLaw, config: EngineConfig
) -> CheckReport:
    grid = threshold_grid(n)
    worst = 0.0
    largest = -math.inf
    for threshold in grid:
        engine_cov, _ = pair_covariance(model, n, threshold, config)
        marginal = tail_exact(joint, threshold, 0)
        exact_cov = pair_joint_tail(joint, 0, 1, threshold) - marginal * marginal
        worst = max(worst, abs(engine_cov - float(exact_cov)))
        largest = max(largest, float(exact_cov))
    return _report(
        f"pair_covariance/{model.name}/n={n}",
        worst,
        len(grid),
        detail=f"largest exact covariance {largest:.3g}",
    )


def _reports_on_grid(
    model: OutcomeModel, n: int, config: EngineConfig
) -> Iterator[ExceedanceReport]:
    for threshold in threshold_grid(n):
        yield exceedance_report(model, n, t_for_threshold(model, n, threshold), config)


def check_w_law(
    model: OutcomeModel, n: int, joint: JointLaw, config: EngineConfig
) -> CheckReport:
    """Mean, variance and second factorial moment of the exact W law against the engine."""
    worst = 0.0
    points = 0
    for report in _reports_on_grid(model, n, config):
        w_pmf = exact_W_distribution(joint, report.raw_threshold)
        stats = w_moments(w_pmf)
        joint_tail = pair_joint_tail(joint, 0, 1, report.raw_threshold)
        worst = max(
            worst,
            abs(float(stats.mean) - report.lambda_n),
            abs(float(stats.variance) - report.var_W),
            abs(float(stats.factorial2 - n * (n - 1) * joint_tail)),
        )
        points += 1
    return _report(f"w_law/{model.name}/n={n}", worst, points)


def check_stein_bound(
    model: OutcomeModel, n: int, joint: JointLaw, config: EngineConfig
) -> CheckReport:
    """Exact TV to Poisson stays below the Stein and combined bounds."""
    worst = -math.inf
    points = 0
    for report in _reports_on_grid(model, n, config):
        if not 0.0 < report.p_n < 1.0:
            continue
        w_pmf = exact_W_distribution(joint, report.raw_threshold)
        tv_exact_mean = tv_to_poisson(w_pmf, report.lambda_n)
        tv_limit = tv_to_poisson(w_pmf, predicted_lambda(report.t))
        worst = max(
            worst,
            tv_exact_mean - report.stein_bound,
            tv_limit - report.combined_bound,
        )
        points += 1
    worst = worst if points else 0.0
    return _report(
        f"stein_bound/{model.name}/n={n}",
        worst,
        points,
        detail=f"smallest margin {-worst:.3g}",
    )


def _exact_check(report: CheckReport, name: str) -> CheckReport:
    return report.model_copy(update={"name": name})


def check_orthants(
    model: OutcomeModel, n: int, joint: JointLaw, config: EngineConfig
) -> CheckReport:
    report = check_nlod_nuod(joint)
    worst = max(
        (report.lower, report.upper), key=lambda check: Fraction(check.max_violation_exact)
    )
    return _exact_check(
        worst.model_copy(
            update={
                "passed": report.passed,
                "grid_size": report.lower.grid_size + report.upper.grid_size,
                "detail": f"nlod max {report.lower.max_violation_exact}, "
                f"nuod max {report.upper.max_violation_exact}",
            }
        ),
        f"nlod_nuod/{model.name}/n={n}",
    )


def check_association(
    model: OutcomeModel, n: int, joint: JointLaw, config: EngineConfig
) -> CheckReport:
    return _exact_check(check_na_spot(joint), f"na_spot/{model.name}/n={n}")


def default_registry() -> CheckRegistry:
    registry = CheckRegistry()
    models: List[Tuple[str, Callable[[], OutcomeModel]]] = [
        ("classical", classical),
        ("chess", chess),
    ]
    plan: List[Tuple[str, CheckRunner, Tuple[int, ...]]] = [
        ("marginals", check_marginals, (2, 3, 4, 5, 6)),
        ("pair_covariance", check_pair_covariance, (4, 5)),
        ("w_law", check_w_law, (4, 5)),
        ("stein_bound", check_stein_bound, (4, 5)),
        ("nlod_nuod", check_orthants, (3, 4, 5)),
        ("na_spot", check_association, (3, 4)),
    ]
    for kind, runner, sizes in plan:
        for model_name, factory in models:
            for n in sizes:
                registry.register(
                    CheckDefinition(
                        name=f"{kind}/{model_name}/n={n}",
                        model_factory=factory,
                        n=n,
                        runner=runner,
                    )
                )
    return registry


def run_suite(
    budget: Optional[int] = None,
    *,
    registry: Optional[CheckRegistry] = None,
    workers: int = 1,
    engine_config: Optional[EngineConfig] = None,
    oracle_config: Optional[OracleConfig] = None,
) -> VerificationReport:
    """Run every registered check; enumerations are shared between checks."""
    registry = registry or default_registry()
    oracle_config = oracle_config or OracleConfig()
    engine_config = engine_config or EngineConfig()
    budget = budget if budget is not None else oracle_config.term_budget
    joints: Dict[Tuple[str, int], JointLaw] = {}
    results: List[CheckReport] = []

    for check in registry.all():
        model = check.model_factory()
        required = term_count(model, check.n)
        if required > budget:
            _logger.info(f"Skipping {check.name}: {required} terms exceed budget {budget}")
            results.append(
                CheckReport(
                    name=check.name,
                    passed=False,
                    skipped=True,
                    detail=f"needs {required} terms, budget {budget}",
                )
            )
            continue
        key = (model.name, check.n)
        if key not in joints:
            joints[key] = enumerate_joint(
                model, check.n, budget, workers=workers, config=oracle_config
            )
        outcome = check.runner(model, check.n, joints[key], engine_config)
        _logger.info(f"{check.name}: {'PASS' if outcome.passed else 'FAIL'}")
        results.append(outcome)
    return VerificationReport(checks=results)
