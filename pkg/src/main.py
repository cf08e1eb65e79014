from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

# Ensure the root directory is in sys.path
root_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if root_dir not in sys.path:
    sys.path.insert(0, root_dir)

from src.asymptotics import DomainError
from src.cli import CommandName, UsageError, VerificationFailed, dispatch
from src.cli.manifest import TOOL_VERSION
from src.cli.writers import OutputFormat
from src.engine import CapacityError
from src.logger import get_logger, set_verbose
from src.oracle import BudgetExceeded, MissingExactWeights
from src.outcome import InvalidModelError
from src.simulator import ConfigError

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_CAPACITY_ERROR = 3


def _add_output(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--out", required=required, help="Output path")
    parser.add_argument(
        "--format",
        choices=[fmt.value for fmt in OutputFormat],
        default=OutputFormat.CSV.value,
        help="Table format (default: csv)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tournament-extremes",
        description="Extreme scores in round-robin tournaments: exact laws, bounds and simulation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {TOOL_VERSION}")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, summary in (
        (CommandName.EXACT, "Exact exceedance reports over an (n, t) grid"),
        (CommandName.BOUNDS, "Poisson-approximation bounds against the rate envelope"),
    ):
        sub = commands.add_parser(name.value, help=summary)
        sub.add_argument("--model", required=True, help="Model JSON file or preset name")
        sub.add_argument("--n", required=True, help="Players grid, e.g. 100,1000 or log2:8:16")
        sub.add_argument("--t", required=True, help="Gumbel-coordinate grid, e.g. -1,0,1")
        sub.add_argument("--workers", type=int, default=1)
        _add_output(sub, required=True)

    simulate = commands.add_parser(CommandName.SIMULATE.value, help="Monte Carlo experiment")
    simulate.add_argument("--config", help="SimConfig JSON file; flags override its values")
    simulate.add_argument("--model", help="Model JSON file or preset name")
    simulate.add_argument("--n", type=int)
    simulate.add_argument("--t", help="Gumbel-coordinate grid")
    simulate.add_argument("--j", type=int, help="Deepest order statistic j_max")
    simulate.add_argument("--replicates", type=int)
    simulate.add_argument("--seed", type=int)
    simulate.add_argument("--workers", type=int)
    simulate.add_argument(
        "--batch-size", type=int, help="Replicates per batch; part of the recorded config"
    )
    simulate.add_argument(
        "--with-exact",
        action="store_true",
        help="Also compare each W histogram with Poisson(lambda_n) from the exact engine",
    )
    simulate.add_argument("--out", required=True, help="Output base path; writes .json, .csv and .order_stats.csv")

    verify = commands.add_parser(CommandName.VERIFY.value, help="Oracle-versus-engine suite")
    verify.add_argument("--budget", type=int, help="Largest enumeration allowed, in terms")
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--out", help="JSON verification report")

    limits = commands.add_parser(CommandName.LIMITS.value, help="Tabulate asymptotic formulas")
    limits.add_argument("--n", required=True)
    limits.add_argument("--t", required=True)
    limits.add_argument("--j", type=int, default=0)
    _add_output(limits, required=False)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command-line tool and return its exit code."""
    # Attempt to load environment variables from .env
    try:
        from dotenv import load_dotenv

        load_dotenv()
    except ImportError:
        pass

    args = build_parser().parse_args(argv)
    if args.verbose:
        set_verbose(True)
    logger = get_logger()

    try:
        return dispatch(args)
    except VerificationFailed as exc:
        logger.error(str(exc))
        return EXIT_VERIFICATION_FAILED
    except (CapacityError, BudgetExceeded) as exc:
        logger.error(str(exc))
        return EXIT_CAPACITY_ERROR
    except (
        UsageError,
        ConfigError,
        InvalidModelError,
        DomainError,
        MissingExactWeights,
    ) as exc:
        logger.error(str(exc))
        return EXIT_CONFIG_ERROR
    except ValueError as exc:
        logger.error(f"Invalid setting: {exc}")
        return EXIT_CONFIG_ERROR


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
