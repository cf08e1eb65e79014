from __future__ import annotations

import logging
import os
import sys
from typing import Optional


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Get a configured logger for the toolkit.

    Args:
        name: Optional name for the logger. Defaults to 'tournament'.

    Returns:
        A configured logging.Logger instance writing to standard error.
    """
    logger_name = name or "tournament"
    logger = logging.getLogger(logger_name)

    # Only add handler if not already added
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.setLevel(os.getenv("TOURNAMENT_LOG_LEVEL", "INFO").upper())

    return logger


def set_verbose(verbose: bool) -> None:
    """Switch the toolkit logger between INFO and DEBUG."""
    get_logger().setLevel(logging.DEBUG if verbose else logging.INFO)
