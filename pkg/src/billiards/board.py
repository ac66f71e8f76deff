# =============================================================================
#  Filename: board.py
#
#  Short Description: Boxes, lattice points and boundary classes
#
#  Creation date: 2026-10-19
# =============================================================================

"""
Board Module

Describes the box T = [0,a_1] x ... x [0,a_n] after joint integer scaling,
classifies lattice points by the boundary faces they touch, and locates the
corner where the trajectory halts.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import FrozenSet, Iterator, Sequence, Set, Tuple

from loguru import logger

from src.billiards.errors import ValidationError
from src.billiards.numthy import lcm_all


@dataclass(frozen=True)
class BoxSpec:
    """
    A box with commensurable sides and its integer scaling.

    Attributes:
        sides_rational: Side lengths as given
        sides: Scaled integer sides a_i = sides_rational[i] * scale
        scale: Positive integer scaling factor
        ell: lcm of the integer sides (trajectory length in lattice steps)
    """

    sides_rational: Tuple[Fraction, ...]
    sides: Tuple[int, ...]
    scale: int
    ell: int

    def __post_init__(self):
        if not self.sides:
            raise ValidationError("A box needs at least one side")
        if len(self.sides) != len(self.sides_rational):
            raise ValidationError("Rational and integer sides differ in length")
        for rational, side in zip(self.sides_rational, self.sides):
            if rational * self.scale != side or side < 1:
                raise ValidationError(
                    f"Side {rational} scaled by {self.scale} is not the positive integer {side}"
                )
        if self.ell != lcm_all(self.sides):
            raise ValidationError(f"ell={self.ell} is not lcm{self.sides}")

    @property
    def n(self) -> int:
        return len(self.sides)

    @classmethod
    def with_scale(cls, sides_rational: Sequence[Fraction], scale: int) -> "BoxSpec":
        """Build a box at an explicit scale (must make every side integral)."""
        rational = tuple(Fraction(s) for s in sides_rational)
        scaled = [s * scale for s in rational]
        if any(s.denominator != 1 for s in scaled):
            raise ValidationError(f"Scale {scale} does not make {rational} integral")
        sides = tuple(int(s) for s in scaled)
        return cls(rational, sides, scale, lcm_all(sides))

    def rescaled(self, factor: int) -> "BoxSpec":
        """The same box at a scale finer by an integer factor."""
        if factor < 1:
            raise ValidationError(f"Rescale factor must be positive, got {factor}")
        return BoxSpec.with_scale(self.sides_rational, self.scale * factor)

    def lattice_size(self) -> int:
        """Number of lattice points, prod(a_i + 1)."""
        return math.prod(a + 1 for a in self.sides)

    def lattice(self) -> Iterator["LatticePoint"]:
        """All lattice points of the box in lexicographic order."""
        for coords in product(*(range(a + 1) for a in self.sides)):
            yield LatticePoint(coords)

    def contains(self, v: "LatticePoint") -> bool:
        return len(v.coords) == self.n and all(
            0 <= x <= a for x, a in zip(v.coords, self.sides)
        )

    def is_pairwise_coprime(self) -> bool:
        return all(
            math.gcd(self.sides[i], self.sides[j]) == 1
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )


@dataclass(frozen=True)
class LatticePoint:
    """Integer point v of the scaled box."""

    coords: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))

    @classmethod
    def of(cls, *coords: int) -> "LatticePoint":
        return cls(tuple(coords))

    def scaled(self, factor: int) -> "LatticePoint":
        return LatticePoint(tuple(x * factor for x in self.coords))

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.coords) + ")"


@dataclass(frozen=True)
class BoundaryProfile:
    """
    Boundary classification of a lattice point (0-based indices).

    I1 holds indices with v_i = 0, I2 those with v_i = a_i, I their union and
    J the indices with v_i ≡ -v_i (mod 2 a_i).
    """

    I1: FrozenSet[int]
    I2: FrozenSet[int]
    I: FrozenSet[int]
    J: FrozenSet[int]
    n: int

    @property
    def is_corner(self) -> bool:
        return len(self.I) == self.n


def make_box(sides_rational: Sequence[Fraction]) -> BoxSpec:
    """
    Build a box from positive rational sides.

    The scale is the least positive integer making every side integral (the
    lcm of the denominators). Integer sides are not reduced by their gcd.

    Raises:
        ValidationError: Empty side list or a non-positive side
    """
    rational = tuple(Fraction(s) for s in sides_rational)
    if not rational:
        raise ValidationError("A box needs at least one side")
    bad = [str(s) for s in rational if s <= 0]
    if bad:
        raise ValidationError(f"Side lengths must be positive, got {bad}")
    scale = lcm_all([s.denominator for s in rational])
    box = BoxSpec.with_scale(rational, scale)
    logger.debug(f"Box {[str(s) for s in rational]} -> sides={box.sides}, scale={scale}, ell={box.ell}")
    return box


def scale_point(box: BoxSpec, point: Sequence[Fraction]) -> Tuple[LatticePoint, BoxSpec]:
    """
    Place a rational point (in the box's original units) on the lattice.

    If the point's coordinates need a finer scaling than the box's, box and
    point are jointly rescaled by the least integer factor making both
    integral.

    Returns:
        (lattice point, possibly rescaled box)

    Raises:
        ValidationError: Wrong dimension or point outside the box
    """
    rational = [Fraction(p) for p in point]
    if len(rational) != box.n:
        raise ValidationError(f"Point has {len(rational)} coordinates, box has {box.n}")
    for p, side in zip(rational, box.sides_rational):
        if not 0 <= p <= side:
            raise ValidationError(
                f"Point {[str(p) for p in rational]} lies outside box {[str(s) for s in box.sides_rational]}"
            )

    in_units = [p * box.scale for p in rational]
    factor = lcm_all([p.denominator for p in in_units])
    if factor > 1:
        logger.debug(f"Rescaling box by {factor} to put point on the lattice")
        box = box.rescaled(factor)
    coords = tuple(int(p * factor) for p in in_units)
    return LatticePoint(coords), box


def _require_inside(box: BoxSpec, v: LatticePoint) -> None:
    if not box.contains(v):
        raise ValidationError(f"Point {v} is not a lattice point of box {box.sides}")


def classify(box: BoxSpec, v: LatticePoint) -> BoundaryProfile:
    """Compute I1, I2, I and J for a lattice point."""
    _require_inside(box, v)
    i1 = frozenset(i for i, x in enumerate(v.coords) if x == 0)
    i2 = frozenset(i for i, (x, a) in enumerate(zip(v.coords, box.sides)) if x == a)
    j = frozenset(
        i for i, (x, a) in enumerate(zip(v.coords, box.sides)) if (2 * x) % (2 * a) == 0
    )
    profile = BoundaryProfile(I1=i1, I2=i2, I=i1 | i2, J=j, n=box.n)
    # On the lattice v_i ≡ -v_i (mod 2a_i) exactly when v_i is 0 or a_i
    assert profile.J == profile.I, f"J != I for {v} in {box.sides}"
    return profile


def parity_consistent(box: BoxSpec, v: LatticePoint) -> bool:
    """True iff all coordinates are even or all are odd."""
    _require_inside(box, v)
    return len({x % 2 for x in v.coords}) == 1


def origin(box: BoxSpec) -> LatticePoint:
    return LatticePoint((0,) * box.n)


def end_corner(box: BoxSpec) -> LatticePoint:
    """Corner where the trajectory halts: a_i where ell/a_i is odd, else 0."""
    corner = LatticePoint(
        tuple(a if (box.ell // a) % 2 else 0 for a in box.sides)
    )
    # ell/a_i is odd for the a_i carrying the highest power of two
    assert any(corner.coords), f"end corner of {box.sides} collapsed to the origin"
    return corner


def inward_directions(box: BoxSpec, v: LatticePoint) -> Set[Tuple[int, ...]]:
    """
    Directions w in {-1,+1}^n pointing from v into the box.

    Coordinates on the lower face must increase and on the upper face
    decrease; the remaining ones are free, so |W_v| = 2^(n - |I(v)|).
    """
    profile = classify(box, v)
    choices = []
    for i in range(box.n):
        if i in profile.I1:
            choices.append((1,))
        elif i in profile.I2:
            choices.append((-1,))
        else:
            choices.append((1, -1))
    return set(product(*choices))


def torus_copies(box: BoxSpec, v: LatticePoint) -> Set[Tuple[int, ...]]:
    """
    Copies of v on the torus 2T under the reflections through the faces.

    Each coordinate is v_i or 2a_i - v_i, reduced mod 2a_i, so boundary
    coordinates contribute a single copy.
    """
    _require_inside(box, v)
    options = [
        {x % (2 * a), (2 * a - x) % (2 * a)} for x, a in zip(v.coords, box.sides)
    ]
    return set(product(*options))
