"""Command-line front end: exact sweeps, bound tables, simulations, verification."""

from .commands import COMMANDS, CommandName, dispatch
from .exceptions import UsageError, VerificationFailed
from .grids import parse_grid, parse_n_grid, parse_t_grid
from .inputs import load_model, model_from_data
from .manifest import TOOL_VERSION, RunManifest
from .verify import CheckDefinition, CheckRegistry, default_registry, run_suite
from .writers import OutputFormat, write_table

__all__ = [
    "COMMANDS",
    "CheckDefinition",
    "CheckRegistry",
    "CommandName",
    "OutputFormat",
    "RunManifest",
    "TOOL_VERSION",
    "UsageError",
    "VerificationFailed",
    "default_registry",
    "dispatch",
    "load_model",
    "model_from_data",
    "parse_grid",
    "parse_n_grid",
    "parse_t_grid",
    "run_suite",
    "write_table",
]
