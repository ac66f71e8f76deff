# =============================================================================
#  Filename: numthy.py
#
#  Short Description: Exact integer/rational primitives and CRT merging
#
#  Creation date: 2026-10-19
# =============================================================================

"""
Exact arithmetic primitives.

Integers are Python ints (arbitrary precision), rationals are
fractions.Fraction (always stored reduced with a positive denominator).
The Chinese Remainder merge handles non-coprime moduli.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple

from src.billiards.errors import InvariantViolation, ValidationError

Rational = Fraction

_RATIONAL_TOKEN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(token: str) -> Fraction:
    """
    Parse an `int` or `int/int` token.

    Decimal and exponent notation are rejected so that every accepted value
    is exact.

    Raises:
        ValidationError: Malformed token or zero denominator
    """
    match = _RATIONAL_TOKEN.match(token)
    if not match:
        raise ValidationError(f"Not a rational token (expected int or int/int): {token!r}")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise ValidationError(f"Zero denominator in {token!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def parse_rationals(text: str) -> List[Fraction]:
    """Parse a comma-separated list of rational tokens."""
    tokens = text.split(",")
    if not text.strip() or any(not t.strip() for t in tokens):
        raise ValidationError(f"Empty entry in rational list: {text!r}")
    return [parse_rational(t) for t in tokens]


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two non-negative integers; gcd(0, 0) = 0."""
    if a < 0 or b < 0:
        raise ValidationError(f"gcd expects non-negative integers, got ({a}, {b})")
    return math.gcd(a, b)


def lcm_all(values: Sequence[int]) -> int:
    """
    Least common multiple of a non-empty list of positive integers.

    Raises:
        ValidationError: Empty list or a value below 1
    """
    if not values:
        raise ValidationError("lcm_all needs at least one value")
    if any(v < 1 for v in values):
        raise ValidationError(f"lcm_all expects positive integers, got {list(values)}")
    return math.lcm(*values)


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended Euclid for non-negative a, b.

    Returns:
        (g, x, y) with g = gcd(a, b) = a*x + b*y
    """
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


@dataclass(frozen=True)
class Congruence:
    """x ≡ residue (mod modulus) with 0 <= residue < modulus."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValidationError(f"Modulus must be positive, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise ValidationError(
                f"Residue {self.residue} not reduced modulo {self.modulus}"
            )

    @classmethod
    def of(cls, value: int, modulus: int) -> "Congruence":
        """Build a congruence, reducing value modulo modulus."""
        if modulus < 1:
            raise ValidationError(f"Modulus must be positive, got {modulus}")
        return cls(value % modulus, modulus)

    def holds(self, x: int) -> bool:
        return x % self.modulus == self.residue


@dataclass(frozen=True)
class CongruenceSystem:
    """A non-empty ordered list of congruences."""

    items: Tuple[Congruence, ...]

    def __post_init__(self):
        if not self.items:
            raise ValidationError("A congruence system needs at least one congruence")

    @classmethod
    def of(cls, pairs: Iterable[Tuple[int, int]]) -> "CongruenceSystem":
        """Build from (value, modulus) pairs."""
        return cls(tuple(Congruence.of(v, m) for v, m in pairs))

    @property
    def modulus(self) -> int:
        return lcm_all([c.modulus for c in self.items])


def merge_pair(left: Congruence, right: Congruence) -> Optional[Congruence]:
    """
    Merge two congruences with possibly non-coprime moduli.

    Returns:
        The combined congruence modulo lcm, or None when the residues
        disagree modulo gcd of the moduli.
    """
    g, p, _ = ext_gcd(left.modulus, right.modulus)
    diff = right.residue - left.residue
    if diff % g:
        return None
    # left.modulus * p ≡ g (mod right.modulus), so k = p * diff/g solves
    # left.residue + left.modulus * k ≡ right.residue (mod right.modulus)
    step = right.modulus // g
    k = (p * (diff // g)) % step
    modulus = left.modulus * step
    return Congruence((left.residue + left.modulus * k) % modulus, modulus)


def crt_merge(system: CongruenceSystem) -> Optional[Congruence]:
    """
    Solve a congruence system by a left fold of pairwise merges.

    Args:
        system: Congruences x ≡ r_i (mod m_i)

    Returns:
        The unique congruence modulo lcm(m_i) satisfying every item, or None
        ("no solution") when some pair disagrees modulo gcd of its moduli.
    """

    def step(acc: Optional[Congruence], item: Congruence) -> Optional[Congruence]:
        return None if acc is None else merge_pair(acc, item)

    merged = reduce(step, system.items[1:], system.items[0])
    if merged is not None and merged.modulus != system.modulus:
        raise InvariantViolation(f"merged modulus {merged.modulus} differs from lcm {system.modulus}")
    return merged
