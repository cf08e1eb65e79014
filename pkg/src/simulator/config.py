from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True, slots=True)
class SimulatorConfig:
    """Immutable execution settings of the Monte Carlo engine.

    Neither setting changes results: every match consumes one double from its
    replicate's stream however the pairs are chunked, and conservation checks
    only read the scores. Batch size does change float rounding and lives on
    SimConfig instead.
    """

    pair_chunk: int = 1 << 20
    conservation_check: str = "sampled"
    conservation_every: int = 64

    @classmethod
    def from_env(cls) -> "SimulatorConfig":
        """Build a config object using standard environment variables."""

        pair_chunk = int(os.getenv("TOURNAMENT_PAIR_CHUNK", cls.pair_chunk_default()))
        conservation_check = os.getenv(
            "TOURNAMENT_CONSERVATION_CHECK", cls.conservation_check_default()
        ).lower()
        if conservation_check not in {"always", "sampled"}:
            raise ValueError(
                f"TOURNAMENT_CONSERVATION_CHECK must be 'always' or 'sampled', got {conservation_check!r}"
            )
        if pair_chunk < 1:
            raise ValueError("TOURNAMENT_PAIR_CHUNK must be positive.")
        return cls(pair_chunk=pair_chunk, conservation_check=conservation_check)

    @staticmethod
    def batch_size_from_env() -> Optional[int]:
        """TOURNAMENT_BATCH_SIZE, or None when unset; SimConfig validates it."""
        value = os.getenv("TOURNAMENT_BATCH_SIZE")
        return int(value) if value else None

    @classmethod
    def pair_chunk_default(cls) -> int:
        return 1 << 20

    @classmethod
    def conservation_check_default(cls) -> str:
        return "sampled"

    def checks_replicate(self, replicate: int) -> bool:
        if self.conservation_check == "always":
            return True
        return replicate % self.conservation_every == 0
