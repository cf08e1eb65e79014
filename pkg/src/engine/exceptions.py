from __future__ import annotations

from typing import Optional


class CapacityError(RuntimeError):
    """Raised when a lattice pmf would exceed the configured atom budget."""

    def __init__(self, requested: int, budget: int, context: Optional[str] = None) -> None:
        self.requested = requested
        self.budget = budget
        self.context = context
        message = f"Lattice support of {requested} atoms exceeds the budget of {budget} atoms"
        if context:
            message = f"{message} ({context})"
        super().__init__(message)

    def __reduce__(self):
        return (CapacityError, (self.requested, self.budget, self.context))


class LatticeMismatchError(ValueError):
    """Raised when two pmfs on different lattice steps are combined."""
