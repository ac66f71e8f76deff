# =============================================================================
#  Filename: walker.py
#
#  Short Description: Brute-force trajectory oracle (reflection and unfolded)
#
#  Creation date: 2026-10-19
# =============================================================================

"""
Walker Module

Two independent simulations of the billiard trajectory on the lattice of T:

- the reflection walker steps by d in {-1,+1}^n and flips d_i at the faces;
- the unfolded walker follows t*(1,...,1) on the torus 2T and folds each
  coordinate back into [0, a_i].

Both record visits for t = 1..ell (t = 0 at the origin is not a visit).
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from loguru import logger

from src.billiards.board import BoxSpec, LatticePoint, end_corner, origin
from src.billiards.config import get_config
from src.billiards.errors import CapExceededError, InvariantViolation

Coords = Tuple[int, ...]


@dataclass
class WalkState:
    """Mutable state of the reflection walker."""

    sides: Tuple[int, ...]
    position: List[int]
    direction: List[int]
    step: int = 0

    @classmethod
    def start(cls, box: BoxSpec) -> "WalkState":
        return cls(box.sides, [0] * box.n, [1] * box.n)

    def normalize(self) -> bool:
        """Reflect at the faces; True if the direction changed."""
        changed = False
        for i, (x, a) in enumerate(zip(self.position, self.sides)):
            if x == 0 and self.direction[i] != 1:
                self.direction[i] = 1
                changed = True
            elif x == a and self.direction[i] != -1:
                self.direction[i] = -1
                changed = True
        return changed

    def advance(self) -> bool:
        """Normalize, then take one lattice step. Returns the normalize flag."""
        changed = self.normalize()
        for i, d in enumerate(self.direction):
            self.position[i] += d
        self.step += 1
        return changed

    def at_corner(self) -> bool:
        return all(x == 0 or x == a for x, a in zip(self.position, self.sides))


@dataclass
class VisitMap:
    """
    Visit counts and times of the lattice points reached for t = 1..ell.

    Keys are coordinate tuples; only visited points are stored.
    """

    counts: Dict[Coords, int] = field(default_factory=dict)
    times: Dict[Coords, List[int]] = field(default_factory=dict)
    t_final: int = 0
    final: Optional[Coords] = None

    def record(self, t: int, coords: Coords) -> None:
        self.counts[coords] = self.counts.get(coords, 0) + 1
        self.times.setdefault(coords, []).append(t)
        self.t_final = t
        self.final = coords

    def total(self) -> int:
        return sum(self.counts.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VisitMap):
            return NotImplemented
        return self.counts == other.counts and self.times == other.times


@dataclass(frozen=True)
class Polyline:
    """Direction-change points of the trajectory, from origin to end corner."""

    vertices: Tuple[LatticePoint, ...]

    def vertex_times(self) -> List[int]:
        """Step index at each vertex (segments move one unit per coordinate per step)."""
        times = [0]
        for prev, cur in zip(self.vertices, self.vertices[1:]):
            times.append(times[-1] + abs(cur.coords[0] - prev.coords[0]))
        return times


def _check_cap(box: BoxSpec, cap: Optional[int]) -> None:
    limit = get_config().sim_cap if cap is None else cap
    if box.ell > limit:
        logger.warning(f"Simulation of box {box.sides} needs {box.ell} steps, cap is {limit}")
        raise CapExceededError(
            "simulation too large, use analytic method", cap=limit, required=box.ell
        )


def reflect_steps(box: BoxSpec, cap: Optional[int] = None) -> Iterator[Tuple[int, Coords, bool]]:
    """
    Stream the reflection walk.

    Yields:
        (t, position after step t, whether the direction changed just before
        step t), until the first corner is reached.
    """
    _check_cap(box, cap)
    state = WalkState.start(box)
    while True:
        turned = state.advance()
        yield state.step, tuple(state.position), turned
        if state.at_corner():
            return


def walk_reflect(box: BoxSpec, cap: Optional[int] = None) -> Tuple[VisitMap, Polyline]:
    """
    Simulate the trajectory by reflections.

    Returns:
        (VisitMap of t = 1..ell, Polyline of direction-change points)

    Raises:
        CapExceededError: ell exceeds the simulation cap
    """
    visits = VisitMap()
    vertices = [origin(box)]
    previous: Coords = vertices[0].coords
    for t, position, turned in reflect_steps(box, cap):
        if turned and t > 1:
            vertices.append(LatticePoint(previous))
        visits.record(t, position)
        previous = position
    vertices.append(LatticePoint(previous))

    if visits.t_final != box.ell:
        raise InvariantViolation(
            f"Reflection walk on {box.sides} halted at t={visits.t_final}, expected ell={box.ell}"
        )
    logger.info(f"Reflection walk on {box.sides}: {visits.t_final} steps, {len(vertices)} vertices")
    return visits, Polyline(tuple(vertices))


def trace_point(box: BoxSpec, v: LatticePoint, cap: Optional[int] = None) -> List[int]:
    """Times at which the reflection walk visits v, without storing a VisitMap."""
    target = v.coords
    return [t for t, position, _ in reflect_steps(box, cap) if position == target]


def unfold_point(box: BoxSpec, t: int) -> LatticePoint:
    """Fold t*(1,...,1) from the torus 2T back into T."""
    coords = []
    for a in box.sides:
        r = t % (2 * a)
        coords.append(r if r <= a else 2 * a - r)
    return LatticePoint(tuple(coords))


def walk_unfolded(box: BoxSpec, cap: Optional[int] = None) -> VisitMap:
    """
    Simulate the trajectory as a straight line on the torus 2T.

    Raises:
        CapExceededError: ell exceeds the simulation cap
    """
    _check_cap(box, cap)
    visits = VisitMap()
    periods = [2 * a for a in box.sides]
    for t in range(1, box.ell + 1):
        coords = []
        for a, p in zip(box.sides, periods):
            r = t % p
            coords.append(r if r <= a else p - r)
        visits.record(t, tuple(coords))
    logger.info(f"Unfolded walk on {box.sides}: {box.ell} steps, {len(visits.counts)} points")
    return visits


def visits(visit_map: VisitMap, v: LatticePoint) -> int:
    """Crossing count of v from a simulation; the origin reports 1 by convention."""
    if not any(v.coords):
        return 1
    return visit_map.counts.get(v.coords, 0)


def check_walk(box: BoxSpec, visit_map: VisitMap) -> List[str]:
    """
    Check the structural properties of a simulated walk.

    Returns:
        Human-readable failures (empty when the walk is consistent)
    """
    failures = []
    if visit_map.t_final != box.ell:
        failures.append(f"walk length {visit_map.t_final} != ell {box.ell}")
    if visit_map.total() != box.ell:
        failures.append(f"sum of visits {visit_map.total()} != ell {box.ell}")
    corner = end_corner(box).coords
    if visit_map.final != corner:
        failures.append(f"walk ended at {visit_map.final}, expected end corner {corner}")
    for coords, ts in visit_map.times.items():
        if len({x % 2 for x in coords}) != 1:
            failures.append(f"visited parity-inconsistent point {coords}")
        is_corner = all(x == 0 or x == a for x, a in zip(coords, box.sides))
        if is_corner and (coords != corner or ts != [box.ell]):
            failures.append(f"corner {coords} visited at {ts}")
    return failures


def torus_segments(box: BoxSpec) -> List[Tuple[int, Coords, Coords]]:
    """
    Segments of the line t*(1,...,1) on the torus 2T, for t in [0, ell].

    A segment ends wherever the folded trajectory reflects (t a multiple of
    some a_i, which includes the wraps at 2a_i) and at t = ell, so segment k
    folds onto segment k of the Polyline.

    Returns:
        (start time, start point, end point) per segment
    """
    breaks = sorted({t for a in box.sides for t in range(a, box.ell + 1, a)} | {box.ell})
    segments = []
    start_t = 0
    for t in breaks:
        start = tuple(start_t % (2 * a) for a in box.sides)
        end = tuple(s + (t - start_t) for s in start)
        segments.append((start_t, start, end))
        start_t = t
    return segments
