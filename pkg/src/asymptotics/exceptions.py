from __future__ import annotations


class DomainError(ValueError):
    """Raised when a formula is evaluated outside the range where it is real-valued."""
