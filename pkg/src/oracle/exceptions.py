from __future__ import annotations


class BudgetExceeded(RuntimeError):
    """Raised when full enumeration needs more weighted terms than allowed."""

    def __init__(self, required: int, budget: int) -> None:
        self.required = required
        self.budget = budget
        super().__init__(f"Enumeration needs {required} terms, budget is {budget}")

    def __reduce__(self):
        return (BudgetExceeded, (self.required, self.budget))


class MissingExactWeights(ValueError):
    """Raised when the oracle is given a model without rational weights."""
