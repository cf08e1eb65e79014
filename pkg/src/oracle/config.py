from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class OracleConfig:
    """Immutable limits of brute-force enumeration."""

    term_budget: int = 100_000_000
    block_size: int = 1 << 18

    @classmethod
    def from_env(cls) -> "OracleConfig":
        """Build a config object using standard environment variables."""

        term_budget = int(os.getenv("TOURNAMENT_ORACLE_BUDGET", cls.term_budget_default()))
        if term_budget < 1:
            raise ValueError("TOURNAMENT_ORACLE_BUDGET must be positive.")
        return cls(term_budget=term_budget)

    @classmethod
    def term_budget_default(cls) -> int:
        return 100_000_000
