from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class EngineConfig:
    """Immutable limits and switches for exact lattice computations."""

    atom_budget: int = 100_000_000
    fft_threshold: int = 4096
    near_atom_epsilon: float = 1e-9

    @classmethod
    def from_env(cls) -> "EngineConfig":
        """Build a config object using standard environment variables."""

        atom_budget = int(
            os.getenv("TOURNAMENT_ATOM_BUDGET", cls.atom_budget_default())
        )
        fft_threshold = int(
            os.getenv("TOURNAMENT_FFT_THRESHOLD", cls.fft_threshold_default())
        )
        near_atom_epsilon = float(
            os.getenv("TOURNAMENT_NEAR_ATOM_EPSILON", cls.near_atom_epsilon_default())
        )
        if atom_budget < 1 or fft_threshold < 1 or near_atom_epsilon < 0:
            raise ValueError("Engine limits must be positive.")
        return cls(
            atom_budget=atom_budget,
            fft_threshold=fft_threshold,
            near_atom_epsilon=near_atom_epsilon,
        )

    @classmethod
    def atom_budget_default(cls) -> int:
        return 100_000_000

    @classmethod
    def fft_threshold_default(cls) -> int:
        return 4096

    @classmethod
    def near_atom_epsilon_default(cls) -> float:
        return 1e-9
