from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List

from .exceptions import InvalidModelError
from .models import ModelMoments, OutcomeModel, ValidationOutcome, Violation, ViolationKind

WEIGHT_TOLERANCE = 1e-12


def validate(model: OutcomeModel) -> ValidationOutcome:
    """Check every outcome-model invariant and report each violation by name."""
    violations: List[Violation] = []
    k = model.denominator
    numerators = [m for m, _ in model.support]

    if k <= 0:
        violations.append(
            Violation(
                kind=ViolationKind.MALFORMED_SUPPORT,
                message=f"denominator must be positive, got {k}",
            )
        )
    if any(m < 0 or m > k for m in numerators):
        violations.append(
            Violation(
                kind=ViolationKind.MALFORMED_SUPPORT,
                message=f"numerators must lie in [0, {k}]",
            )
        )
    if any(b <= a for a, b in zip(numerators, numerators[1:])):
        violations.append(
            Violation(
                kind=ViolationKind.MALFORMED_SUPPORT,
                message="numerators must be strictly increasing without duplicates",
            )
        )
    if len(numerators) < 2:
        violations.append(
            Violation(
                kind=ViolationKind.DEGENERATE_SUPPORT,
                message=f"support needs at least two points, got {len(numerators)}",
            )
        )

    exact = model.exact_weights()
    if exact is not None and len(exact) != len(numerators):
        violations.append(
            Violation(
                kind=ViolationKind.MALFORMED_SUPPORT,
                message="weights_exact must align with support",
            )
        )
        exact = None
    if exact is not None:
        for (m, w), q in zip(model.support, exact):
            if abs(float(q) - w) > WEIGHT_TOLERANCE:
                violations.append(
                    Violation(
                        kind=ViolationKind.MALFORMED_SUPPORT,
                        message=f"float weight {w} at m={m} disagrees with exact {q}",
                    )
                )

    nonpositive = [m for m, w in model.support if not w > 0]
    if exact is not None:
        nonpositive += [m for (m, _), q in zip(model.support, exact) if q <= 0]
    if nonpositive:
        violations.append(
            Violation(
                kind=ViolationKind.NONPOSITIVE_WEIGHT,
                message=f"weights must be strictly positive at m={sorted(set(nonpositive))}",
            )
        )

    if exact is not None:
        if sum(exact) != 1:
            violations.append(
                Violation(
                    kind=ViolationKind.WEIGHTS_NOT_NORMALIZED,
                    message=f"exact weights sum to {sum(exact)}",
                )
            )
    else:
        total = math.fsum(w for _, w in model.support)
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            violations.append(
                Violation(
                    kind=ViolationKind.WEIGHTS_NOT_NORMALIZED,
                    message=f"weights sum to {total!r}",
                )
            )

    asymmetric = _asymmetric_points(model, exact)
    if asymmetric:
        violations.append(
            Violation(
                kind=ViolationKind.ASYMMETRIC_SUPPORT,
                message=f"law is not symmetric about 1/2 at m={asymmetric}",
            )
        )

    return ValidationOutcome(violations=violations)


def _asymmetric_points(model: OutcomeModel, exact: List[Fraction] | None) -> List[int]:
    k = model.denominator
    if exact is not None:
        weights: Dict[int, object] = {m: q for (m, _), q in zip(model.support, exact)}
    else:
        weights = {m: w for m, w in model.support}
    bad = []
    for m, w in weights.items():
        mirror = weights.get(k - m)
        if mirror is None:
            bad.append(m)
        elif exact is not None:
            if mirror != w:
                bad.append(m)
        elif abs(mirror - w) > WEIGHT_TOLERANCE:  # type: ignore[operator]
            bad.append(m)
    return sorted(bad)


def require_valid(model: OutcomeModel) -> OutcomeModel:
    """Return the model unchanged, or raise InvalidModelError."""
    outcome = validate(model)
    if not outcome.valid:
        raise InvalidModelError(outcome.violations)
    return model


def moments(model: OutcomeModel) -> ModelMoments:
    """Mean (always 1/2) and standard deviation of one match reward."""
    require_valid(model)
    k = model.denominator
    exact = model.exact_weights()
    if exact is not None:
        half = Fraction(1, 2)
        variance = float(
            sum(q * (Fraction(m, k) - half) ** 2 for (m, _), q in zip(model.support, exact))
        )
    else:
        variance = math.fsum(w * (m / k - 0.5) ** 2 for m, w in model.support)
    return ModelMoments(mu=0.5, sigma=math.sqrt(variance))
