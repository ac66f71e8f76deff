# =============================================================================
#  Filename: config.py
#
#  Short Description: Configuration and caps for the billiards package
#
#  Creation date: 2026-10-19
# =============================================================================

"""
Configuration module for the arithmetic billiards package.

Caps and logging settings come from environment variables (optionally loaded
from a .env file) and can be overridden explicitly, e.g. by CLI flags.
"""

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Optional

from dotenv import load_dotenv

from src.billiards.errors import ConfigError

# Load environment variables from .env file
load_dotenv()

DEFAULT_SIM_CAP = 10**8
DEFAULT_ENUM_CAP = 10**7
DEFAULT_ASSIGNMENT_CAP = 2**16

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")

# Reported in every JSON envelope: t = 0 is not a visit, t = ell is.
CONVENTION = "visits-exclude-start"


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw.replace("_", ""))
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from e


def _env_path(name: str) -> Optional[Path]:
    raw = os.getenv(name)
    return Path(raw) if raw else None


@dataclass
class BilliardConfig:
    """Caps, worker count and logging settings."""

    # Simulation: maximum trajectory length (lattice steps) a walker may take
    sim_cap: int = field(default_factory=lambda: _env_int("BILLIARD_SIM_CAP", DEFAULT_SIM_CAP))

    # Exhaustive lattice scans: maximum number of lattice points
    enum_cap: int = field(default_factory=lambda: _env_int("BILLIARD_ENUM_CAP", DEFAULT_ENUM_CAP))

    # CSP: maximum number of assignments to enumerate explicitly
    assignment_cap: int = field(
        default_factory=lambda: _env_int("BILLIARD_ASSIGN_CAP", DEFAULT_ASSIGNMENT_CAP)
    )

    # Verification fan-out
    workers: int = field(default_factory=lambda: _env_int("BILLIARD_WORKERS", 1))

    # Logging configuration
    log_level: str = field(default_factory=lambda: os.getenv("BILLIARD_LOG_LEVEL", "WARNING"))
    log_file: Optional[Path] = field(default_factory=lambda: _env_path("BILLIARD_LOG_FILE"))
    run_log_dir: Optional[Path] = field(default_factory=lambda: _env_path("BILLIARD_RUN_LOG_DIR"))

    def __post_init__(self):
        """Validate caps and logging settings."""
        for name in ("sim_cap", "enum_cap", "assignment_cap", "workers"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")

        self.log_level = self.log_level.upper()
        if self.log_level not in LOG_LEVELS:
            raise ConfigError(f"Unknown log level: {self.log_level}")


def get_config(**overrides: Any) -> BilliardConfig:
    """
    Get a configuration instance.

    Environment variables provide the defaults; keyword arguments whose value
    is not None override them.

    Args:
        **overrides: Field values to override (None means "keep default")

    Returns:
        Validated BilliardConfig
    """
    config = BilliardConfig()
    explicit = {key: value for key, value in overrides.items() if value is not None}
    if not explicit:
        return config

    unknown = set(explicit) - set(config.__dataclass_fields__)
    if unknown:
        raise ConfigError(f"Unknown configuration fields: {sorted(unknown)}")
    return replace(config, **explicit)
