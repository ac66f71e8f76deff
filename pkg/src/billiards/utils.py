# =============================================================================
#  Filename: utils.py
#
#  Short Description: Logging setup and small helpers
#
#  Creation date: 2026-10-19
# =============================================================================

"""
Utility functions for the billiards package.

Contains logging setup and helpers for turning results into JSON-ready data.
"""

import sys
import time
from dataclasses import asdict, is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Tuple, TypeVar

from loguru import logger

from src.billiards.config import BilliardConfig

T = TypeVar("T")


def setup_logging(config: BilliardConfig) -> None:
    """
    Setup logging configuration using loguru.

    Args:
        config: BilliardConfig instance with logging settings
    """
    # Remove default handler
    logger.remove()

    # Add console handler
    logger.add(
        sys.stderr,
        level=config.log_level,
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>",
        colorize=True
    )

    # Add file handler if log file is specified
    if config.log_file:
        logger.add(
            config.log_file,
            level=config.log_level,
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}",
            rotation="10 MB",
            retention="7 days"
        )

    logger.debug(f"Logging configured with level: {config.log_level}")


def jsonable(value: Any) -> Any:
    """Convert dataclasses, enums, fractions and sets into JSON-ready values."""
    if is_dataclass(value) and not isinstance(value, type):
        return jsonable(asdict(value))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k) if not isinstance(k, str) else k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def timed_ns(func: Callable[[], T]) -> Tuple[T, int]:
    """Run func once and return (result, elapsed nanoseconds)."""
    start = time.perf_counter_ns()
    result = func()
    return result, time.perf_counter_ns() - start
