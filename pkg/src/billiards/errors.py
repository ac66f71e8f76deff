# =============================================================================
#  Filename: errors.py
#
#  Short Description: Exception hierarchy for the billiards package
#
#  Creation date: 2026-10-19
# =============================================================================

"""
Exceptions raised by the billiards package.

The CLI maps them onto exit codes:
- ValidationError (and subclasses) -> 1
- CapExceededError -> 3
InvariantViolation is never expected; it marks a bug in the package.
"""

from typing import Optional


class BilliardError(Exception):
    """Base class for all package errors."""


class ValidationError(BilliardError, ValueError):
    """Bad input: non-positive sides, points outside the box, malformed tokens."""


class PreconditionError(ValidationError):
    """Input is well formed but the operation does not apply to it."""


class ConfigError(ValidationError):
    """Invalid configuration value."""


class CapExceededError(BilliardError, RuntimeError):
    """A configured simulation or enumeration cap would be exceeded."""

    def __init__(self, message: str, cap: int, required: Optional[int] = None):
        super().__init__(message)
        self.cap = cap
        self.required = required


class InvariantViolation(BilliardError, AssertionError):
    """An internal invariant failed."""
