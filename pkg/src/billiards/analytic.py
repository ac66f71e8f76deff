# =============================================================================
#  Filename: analytic.py
#
#  Short Description: Crossing numbers, crossing times and bounce counts
#
#  Creation date: 2026-10-19
# =============================================================================

"""
Analytic Module

Answers crossing queries without walking the trajectory:

- crossing_number: satisfying assignments of the sign-choice CSP divided by
  2^(|J(v)|+1);
- crossing_times: one CRT solve per satisfying assignment, t = min(x, 2ell-x);
- closed forms for pairwise coprime sides (crossing number, bounce table);
- exhaustive lattice scans (bounce table, sum identity, intersection points).
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import prod
from typing import List, Optional, Tuple

from loguru import logger

from src.billiards.board import (
    BoxSpec,
    LatticePoint,
    classify,
    end_corner,
    inward_directions,
    parity_consistent,
    torus_copies,
)
from src.billiards.config import get_config
from src.billiards.csp import build_csp, count_assignments, enumerate_assignments
from src.billiards.errors import CapExceededError, InvariantViolation, PreconditionError
from src.billiards.numthy import CongruenceSystem, crt_merge


class Method(str, Enum):
    """How a crossing number was obtained."""

    CSP = "csp"
    CORNER_CONVENTION = "corner-convention"
    FORMULA = "formula"
    SIMULATION = "simulation"


@dataclass(frozen=True)
class CrossingResult:
    """Crossing number of a point, optionally with its crossing times."""

    m: int
    method: Method
    times: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if not is_power_of_two_or_zero(self.m):
            raise InvariantViolation(f"crossing number {self.m} is neither 0 nor a power of two")
        if self.times is not None and len(self.times) != self.m:
            raise InvariantViolation(f"{len(self.times)} crossing times for m={self.m}")


@dataclass(frozen=True)
class BounceTable:
    """b_k for k = 0..n: crossed lattice points with exactly k boundary coordinates."""

    by_k: Tuple[int, ...]
    method: str


def is_power_of_two_or_zero(m: int) -> bool:
    return m >= 0 and (m & (m - 1)) == 0


def _corner_crossing(box: BoxSpec, v: LatticePoint) -> int:
    if not any(v.coords) or v == end_corner(box):
        return 1
    return 0


def crossing_number(box: BoxSpec, v: LatticePoint) -> CrossingResult:
    """
    Crossing number m(v) of a lattice point.

    Corners follow the convention: 1 for the origin and the end corner, 0 for
    the others. Non-corners use |A(G)| / 2^(|J(v)|+1).
    """
    profile = classify(box, v)
    if profile.is_corner:
        return CrossingResult(_corner_crossing(box, v), Method.CORNER_CONVENTION)

    count = count_assignments(build_csp(box, v))
    if count.total == 0:
        return CrossingResult(0, Method.CSP)

    shift = len(profile.J) + 1
    # Coordinates in J are isolated vertices of H; the rest form at least one component
    if count.component_count < shift:
        raise InvariantViolation(
            f"{count.component_count} components cannot absorb 2^{shift} at {v} in {box.sides}"
        )
    m = count.total >> shift
    logger.debug(f"m{v} in {box.sides} = {count.total} / 2^{shift} = {m}")
    return CrossingResult(m, Method.CSP)


def crossing_times(box: BoxSpec, v: LatticePoint, cap: Optional[int] = None) -> CrossingResult:
    """
    Times t in {1..ell-1} at which the trajectory crosses a non-corner v.

    Sign choices on J(v) do not change the congruence system, so they are
    fixed to 0; each remaining assignment gives one x in {0..2ell-1}.

    Raises:
        PreconditionError: v is a corner
        CapExceededError: Too many assignments to enumerate
    """
    profile = classify(box, v)
    if profile.is_corner:
        raise PreconditionError(f"crossing_times needs a non-corner point, got corner {v}")

    csp = build_csp(box, v)
    times = set()
    for g in enumerate_assignments(csp, cap):
        if any(g[i] for i in profile.J):
            continue
        system = CongruenceSystem.of(
            (-x if gi else x, 2 * a) for x, a, gi in zip(v.coords, box.sides, g)
        )
        solution = crt_merge(system)
        if solution is None:
            raise InvariantViolation(f"satisfying assignment {g} has no CRT solution at {v}")
        x = solution.residue
        times.add(x if x <= box.ell else 2 * box.ell - x)

    result = CrossingResult(len(times), Method.CSP, tuple(sorted(times)))
    expected = crossing_number(box, v).m
    if result.m != expected or any(not 0 < t < box.ell for t in times):
        raise InvariantViolation(f"crossing times {result.times} disagree with m={expected} at {v}")
    return result


def crossing_directions(box: BoxSpec, v: LatticePoint) -> List[Tuple[int, Tuple[int, ...]]]:
    """
    Outgoing direction of every crossing of a non-corner v.

    At time t coordinate i moves up iff t mod 2a_i < a_i.
    """
    result = crossing_times(box, v)
    directions = []
    for t in result.times:
        d = tuple(1 if t % (2 * a) < a else -1 for a in box.sides)
        directions.append((t, d))

    allowed = inward_directions(box, v)
    copies = torus_copies(box, v)
    lines = set()
    for t, d in directions:
        if tuple(t % (2 * a) for a in box.sides) not in copies:
            raise InvariantViolation(f"unfolded position at t={t} is not a copy of {v} on the torus")
        line = max(d, tuple(-x for x in d))
        if d not in allowed or line in lines:
            raise InvariantViolation(f"crossing direction {d} at {v} repeats a line or leaves the box")
        lines.add(line)
    return directions


def _require_non_corner(box: BoxSpec, v: LatticePoint) -> int:
    profile = classify(box, v)
    if profile.is_corner:
        raise PreconditionError(f"{v} is a corner of box {box.sides}")
    return len(profile.I)


def _require_coprime(box: BoxSpec) -> None:
    if not box.is_pairwise_coprime():
        raise PreconditionError(f"Sides {box.sides} are not pairwise coprime")


def coprime_crossing_formula(box: BoxSpec, v: LatticePoint) -> int:
    """2^(n-1-|I(v)|) for parity-consistent non-corners of a pairwise coprime box, else 0."""
    _require_coprime(box)
    boundary = _require_non_corner(box, v)
    if not parity_consistent(box, v):
        return 0
    return 2 ** (box.n - 1 - boundary)


def crossing_upper_bound(box: BoxSpec, v: LatticePoint) -> int:
    """Half the number of inward directions: 2^(n-1-|I(v)|)."""
    boundary = _require_non_corner(box, v)
    return 2 ** (box.n - 1 - boundary)


def bounce_table_formula(box: BoxSpec) -> BounceTable:
    """
    b_k = 2^(1-n+k) * sum over |J| = k of prod_{j not in J} (a_j - 1).

    Raises:
        PreconditionError: Sides not pairwise coprime
    """
    _require_coprime(box)
    n = box.n
    table = []
    for k in range(n + 1):
        total = sum(
            prod(box.sides[j] - 1 for j in range(n) if j not in chosen)
            for chosen in map(set, combinations(range(n), k))
        )
        scaled = total * 2 ** (1 + k)
        if scaled % 2**n:
            raise InvariantViolation(f"b_{k} of {box.sides} is not an integer")
        table.append(scaled // 2**n)
    return BounceTable(tuple(table), "formula")


def require_enumerable(box: BoxSpec, cap: Optional[int] = None) -> None:
    """Refuse lattice scans larger than the enumeration cap."""
    limit = get_config().enum_cap if cap is None else cap
    size = box.lattice_size()
    if size > limit:
        logger.warning(f"Box {box.sides} has {size} lattice points, scan cap is {limit}")
        raise CapExceededError(
            f"lattice of {size} points exceeds the scan cap", cap=limit, required=size
        )


def bounce_table_enumerated(box: BoxSpec, cap: Optional[int] = None) -> BounceTable:
    """Count crossed lattice points by boundary dimension, by exhaustive scan."""
    require_enumerable(box, cap)
    table = [0] * (box.n + 1)
    for v in box.lattice():
        if crossing_number(box, v).m > 0:
            table[len(classify(box, v).I)] += 1
    return BounceTable(tuple(table), "enumerated")


def sum_identity_check(box: BoxSpec, cap: Optional[int] = None) -> Tuple[int, int, bool]:
    """
    Compare the sum of crossing numbers with ell.

    The origin contributes 0 here (t = 0 is not a visit); the end corner 1.

    Returns:
        (lhs, rhs, equal)
    """
    require_enumerable(box, cap)
    lhs = sum(crossing_number(box, v).m for v in box.lattice() if any(v.coords))
    return lhs, box.ell, lhs == box.ell


def intersection_points(box: BoxSpec, cap: Optional[int] = None) -> List[Tuple[LatticePoint, int]]:
    """Self-intersection points of the trajectory (m >= 2) with their crossing numbers."""
    require_enumerable(box, cap)
    points = []
    for v in box.lattice():
        m = crossing_number(box, v).m
        if m >= 2:
            points.append((v, m))
    logger.info(f"Box {box.sides}: {len(points)} self-intersection points")
    return points
