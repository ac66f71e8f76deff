# =============================================================================
#  Filename: __init__.py
#
#  Short Description: Package initialization for arithmetic billiards
#
#  Creation date: 2026-10-19
# =============================================================================

"""
Arithmetic Billiards - exact crossing numbers in n-dimensional boxes

A ball leaves the corner (0,...,0) of a box with commensurable sides along
(1,...,1) and reflects off the walls until it reaches another corner. This
package answers, without simulating, how often it passes through a lattice
point, and simulates the walk to check the answer.

Modules:
- numthy: Rational parsing, gcd/lcm, CRT with non-coprime moduli
- board: Boxes, lattice points, boundary profiles, end corner
- walker: Reflection and unfolded simulators
- csp: Sign-choice constraint problem and its exact solution count
- analytic: Crossing numbers, crossing times, closed forms, bounce tables
- verify: Analytic-vs-simulation harness over box families
- render: JSON/CSV/SVG output
- cli: Typer command-line app
"""

from .analytic import CrossingResult, Method, crossing_number, crossing_times
from .board import BoxSpec, LatticePoint, classify, end_corner, make_box, scale_point
from .config import BilliardConfig, get_config
from .errors import (
    BilliardError,
    CapExceededError,
    InvariantViolation,
    PreconditionError,
    ValidationError,
)
from .utils import setup_logging
from .walker import walk_reflect, walk_unfolded

__version__ = "0.1.0"

__all__ = [
    "BilliardConfig",
    "BilliardError",
    "BoxSpec",
    "CapExceededError",
    "CrossingResult",
    "InvariantViolation",
    "LatticePoint",
    "Method",
    "PreconditionError",
    "ValidationError",
    "classify",
    "crossing_number",
    "crossing_times",
    "end_corner",
    "get_config",
    "make_box",
    "scale_point",
    "setup_logging",
    "walk_reflect",
    "walk_unfolded",
]
