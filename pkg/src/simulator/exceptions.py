from __future__ import annotations


class ConfigError(ValueError):
    """Raised when a simulation config breaks one of its invariants."""


class ConservationError(RuntimeError):
    """Raised when a simulated tournament's scores do not add up to n(n-1)/2."""
