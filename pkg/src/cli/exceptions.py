from __future__ import annotations


class UsageError(ValueError):
    """Raised for malformed grids, model files or flag combinations."""


class VerificationFailed(RuntimeError):
    """Raised when one or more verification checks fail."""

    def __init__(self, names: list[str]) -> None:
        self.names = names
        super().__init__(f"Verification failed: {', '.join(names)}")
