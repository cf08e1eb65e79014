from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import signal

from src.logger import get_logger
from src.outcome import OutcomeModel, require_valid

from .config import EngineConfig
from .exceptions import CapacityError, LatticeMismatchError

_logger = get_logger()

# Largest negative FFT residue treated as roundoff rather than a defect.
NEGATIVE_RESIDUE = 1e-15


@dataclass(frozen=True, slots=True, eq=False)
class LatticePmf:
    """Probability mass function on {offset/k, (offset+1)/k, ...}.

    Atom i of `probs` sits at value (offset + i) / step_denominator. The array is
    made read-only on construction so instances can be shared freely.
    """

    step_denominator: int
    offset: int
    probs: np.ndarray
    cleanup_mass: float = 0.0

    def __post_init__(self) -> None:
        probs = np.ascontiguousarray(self.probs, dtype=np.float64)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def size(self) -> int:
        return int(self.probs.shape[0])

    @property
    def indices(self) -> np.ndarray:
        """Lattice indices (values times k) of every atom."""
        return np.arange(self.offset, self.offset + self.size, dtype=np.int64)

    @property
    def values(self) -> np.ndarray:
        return self.indices / self.step_denominator

    def total(self) -> float:
        return math.fsum(self.probs)

    def mean(self) -> float:
        return float(np.dot(self.values, self.probs))

    def variance(self) -> float:
        centered = self.values - self.mean()
        return float(np.dot(centered * centered, self.probs))

    def prob_at(self, index: int) -> float:
        """Mass of the atom with lattice index `index` (value index / k)."""
        position = index - self.offset
        if 0 <= position < self.size:
            return float(self.probs[position])
        return 0.0


@dataclass(frozen=True, slots=True)
class TailLookup:
    """Strict and inclusive tail masses at one threshold."""

    exclusive: float
    inclusive: float
    near_atom: bool


@dataclass(frozen=True, slots=True, eq=False)
class SurvivalFunction:
    """Precomputed P(X >= atom i) for repeated threshold lookups on one pmf."""

    pmf: LatticePmf
    epsilon: float = 1e-9
    _at_or_above: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        # Summed from the far end so small tails keep their relative precision.
        at_or_above = np.cumsum(self.pmf.probs[::-1])[::-1]
        object.__setattr__(self, "_at_or_above", np.append(at_or_above, 0.0))

    def _mass_from(self, position: int) -> float:
        if position >= self.pmf.size:
            return 0.0
        return min(float(self._at_or_above[max(position, 0)]), 1.0)

    def exceeding_units(self, units: float) -> TailLookup:
        """Tail beyond `units`, a threshold already multiplied by k."""
        position = units - self.pmf.offset
        nearest = round(position)
        if abs(position - nearest) <= self.epsilon:
            return TailLookup(
                exclusive=self._mass_from(nearest + 1),
                inclusive=self._mass_from(nearest),
                near_atom=True,
            )
        first = math.floor(position) + 1
        mass = self._mass_from(first)
        return TailLookup(exclusive=mass, inclusive=mass, near_atom=False)

    def exceeding(self, u: float) -> TailLookup:
        return self.exceeding_units(u * self.pmf.step_denominator)


def first_index_above(units: float, epsilon: float = 1e-9) -> int:
    """Smallest lattice index strictly above a threshold given in lattice units.

    A threshold within `epsilon` of an atom is treated as sitting on it.
    """
    nearest = round(units)
    if abs(units - nearest) <= epsilon:
        return int(nearest) + 1
    return int(math.floor(units)) + 1


def tail_prob(pmf: LatticePmf, u: float, epsilon: float = 1e-9) -> float:
    """P(X > u) with strict inequality; an atom sitting at u is excluded."""
    return SurvivalFunction(pmf, epsilon).exceeding(u).exclusive


def base_pmf(model: OutcomeModel) -> LatticePmf:
    """Law of one match reward as a lattice pmf with step 1/k."""
    require_valid(model)
    numerators = model.numerators
    offset = int(numerators[0])
    probs = np.zeros(int(numerators[-1]) - offset + 1)
    probs[numerators - offset] = model.weights
    return LatticePmf(step_denominator=model.denominator, offset=offset, probs=probs)


def _cleanup(raw: np.ndarray) -> tuple[np.ndarray, float]:
    negative = raw < 0
    removed = float(-raw[negative].sum())
    if negative.any():
        worst = float(raw.min())
        if worst < -NEGATIVE_RESIDUE:
            _logger.warning(f"Convolution residue {worst:.3e} below -{NEGATIVE_RESIDUE}")
        raw = np.where(negative, 0.0, raw)
    total = math.fsum(raw)
    if abs(total - 1.0) > 1e-9:
        _logger.warning(f"Convolution mass drifted to {total!r} before renormalization")
    return raw / total, removed


def _trim(probs: np.ndarray, offset: int) -> tuple[np.ndarray, int]:
    nonzero = np.flatnonzero(probs)
    if nonzero.size == 0:
        raise ValueError("Cannot trim an all-zero pmf")
    first, last = int(nonzero[0]), int(nonzero[-1])
    return probs[first : last + 1], offset + first


def convolve(
    left: LatticePmf, right: LatticePmf, config: Optional[EngineConfig] = None
) -> LatticePmf:
    """Law of the sum of two independent lattice variables."""
    config = config or EngineConfig()
    if left.step_denominator != right.step_denominator:
        raise LatticeMismatchError(
            f"Cannot convolve steps 1/{left.step_denominator} and 1/{right.step_denominator}"
        )
    size = left.size + right.size - 1
    if size > config.atom_budget:
        raise CapacityError(requested=size, budget=config.atom_budget)

    if max(left.size, right.size) > config.fft_threshold:
        _logger.debug(f"convolve: fft for sizes {left.size} x {right.size}")
        raw = signal.fftconvolve(left.probs, right.probs, mode="full")
        probs, removed = _cleanup(raw)
    else:
        _logger.debug(f"convolve: direct for sizes {left.size} x {right.size}")
        raw = np.convolve(left.probs, right.probs)
        probs, removed = raw / math.fsum(raw), 0.0
    probs, offset = _trim(probs, left.offset + right.offset)
    return LatticePmf(
        step_denominator=left.step_denominator,
        offset=offset,
        probs=probs,
        cleanup_mass=left.cleanup_mass + right.cleanup_mass + removed,
    )


def convolve_power(
    base: LatticePmf, m: int, config: Optional[EngineConfig] = None
) -> LatticePmf:
    """Law of the sum of m iid copies of `base`, by binary exponentiation."""
    config = config or EngineConfig()
    if m < 1:
        raise ValueError(f"convolve_power needs m >= 1, got {m}")
    requested = m * (base.size - 1) + 1
    if requested > config.atom_budget:
        raise CapacityError(requested=requested, budget=config.atom_budget)

    result: Optional[LatticePmf] = None
    power = base
    remaining = m
    while True:
        if remaining & 1:
            result = power if result is None else convolve(result, power, config)
        remaining >>= 1
        if not remaining:
            break
        power = convolve(power, power, config)
    assert result is not None
    _logger.debug(
        f"convolve_power: m={m}, atoms={result.size}, cleanup={result.cleanup_mass:.3e}"
    )
    return result
