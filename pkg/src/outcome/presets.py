from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Tuple, Union

from .models import OutcomeModel

Rational = Union[Fraction, int, str]


def from_exact(denominator: int, weights: List[Tuple[int, Fraction]], name: str) -> OutcomeModel:
    """Build a model whose float weights are derived from exact rationals."""
    return OutcomeModel(
        denominator=denominator,
        support=[(m, float(q)) for m, q in weights],
        weights_exact=[(q.numerator, q.denominator) for _, q in weights],
        name=name,
    )


def classical() -> OutcomeModel:
    """Win/loss tournament: X in {0, 1}, each with probability 1/2."""
    half = Fraction(1, 2)
    return from_exact(1, [(0, half), (1, half)], name="classical")


def chess(draw_probability: Rational = Fraction(1, 2)) -> OutcomeModel:
    """Win/draw/loss tournament on {0, 1/2, 1} with the given draw probability."""
    draw = Fraction(draw_probability)
    if not 0 < draw < 1:
        raise ValueError(f"draw probability must lie in (0, 1), got {draw}")
    side = (1 - draw) / 2
    name = "chess" if draw == Fraction(1, 2) else f"chess-d{draw}"
    return from_exact(2, [(0, side), (1, draw), (2, side)], name=name)


def uniform_lattice(k: int) -> OutcomeModel:
    """Uniform law on D_k = {0, 1/k, ..., 1}."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    weight = Fraction(1, k + 1)
    return from_exact(k, [(m, weight) for m in range(k + 1)], name=f"uniform-d{k}")


def reflect(model: OutcomeModel) -> OutcomeModel:
    """Relabel a -> 1 - a; a symmetric law maps to itself up to ordering."""
    k = model.denominator
    support = sorted((k - m, w) for m, w in model.support)
    exact = None
    if model.weights_exact is not None:
        exact = [
            q for _, q in sorted(
                (k - m, q) for (m, _), q in zip(model.support, model.weights_exact)
            )
        ]
    return OutcomeModel(
        denominator=k, support=support, weights_exact=exact, name=f"{model.name}-reflected"
    )


def rescale(model: OutcomeModel, factor: int) -> OutcomeModel:
    """Same law written over the denominator factor * k."""
    if factor < 1:
        raise ValueError(f"factor must be a positive integer, got {factor}")
    return OutcomeModel(
        denominator=model.denominator * factor,
        support=[(m * factor, w) for m, w in model.support],
        weights_exact=model.weights_exact,
        name=f"{model.name}-x{factor}",
    )


PRESETS: Dict[str, Callable[..., OutcomeModel]] = {
    "classical": classical,
    "chess": chess,
    "uniform": uniform_lattice,
}
