"""Match-outcome laws and their validation."""

from .exceptions import InvalidModelError
from .models import ModelMoments, OutcomeModel, ValidationOutcome, Violation, ViolationKind
from .presets import PRESETS, chess, classical, reflect, rescale, uniform_lattice
from .validation import moments, require_valid, validate

__all__ = [
    "InvalidModelError",
    "ModelMoments",
    "OutcomeModel",
    "PRESETS",
    "ValidationOutcome",
    "Violation",
    "ViolationKind",
    "chess",
    "classical",
    "moments",
    "reflect",
    "require_valid",
    "rescale",
    "uniform_lattice",
    "validate",
]
