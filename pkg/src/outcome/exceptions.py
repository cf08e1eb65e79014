from __future__ import annotations

from typing import List

from .models import Violation


class InvalidModelError(ValueError):
    """Raised when an operation needs a valid outcome model and got an invalid one."""

    def __init__(self, violations: List[Violation]) -> None:
        self.violations = violations
        names = ", ".join(violation.kind.value for violation in violations)
        super().__init__(f"Invalid outcome model: {names}")
