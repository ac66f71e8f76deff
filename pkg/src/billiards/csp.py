# =============================================================================
#  Filename: csp.py
#
#  Short Description: Pairwise sign-choice CSP and its assignment counting
#
#  Creation date: 2026-10-19
# =============================================================================

"""
CSP Module

Every coordinate i of a lattice point v gets a sign choice g(i) in {0,1}
meaning x ≡ (-1)^g(i) v_i (mod 2a_i). Two choices are CRT-compatible iff the
residues agree modulo gcd(2a_i, 2a_j); the pairwise constraints below encode
that. Satisfying assignments are counted with a union-find that tracks the
parity (equal / unequal) of every variable relative to its root.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Tuple

from loguru import logger

from src.billiards.board import BoxSpec, LatticePoint, classify
from src.billiards.config import get_config
from src.billiards.errors import CapExceededError, ValidationError

Pair = Tuple[int, int]
Assignment = Tuple[int, ...]

_ALL_PAIRS: FrozenSet[Pair] = frozenset({(0, 0), (0, 1), (1, 0), (1, 1)})


class Constraint(str, Enum):
    """Constraint between two sign choices, named by what it allows."""

    FREE = "free"
    REQUIRE_EQUAL = "require_equal"
    REQUIRE_UNEQUAL = "require_unequal"
    IMPOSSIBLE = "impossible"

    @property
    def forbidden(self) -> FrozenSet[Pair]:
        """Forbidden value pairs (g(i), g(j))."""
        return {
            Constraint.FREE: frozenset(),
            Constraint.REQUIRE_EQUAL: frozenset({(0, 1), (1, 0)}),
            Constraint.REQUIRE_UNEQUAL: frozenset({(0, 0), (1, 1)}),
            Constraint.IMPOSSIBLE: _ALL_PAIRS,
        }[self]

    def allows(self, gi: int, gj: int) -> bool:
        return (gi, gj) not in self.forbidden


@dataclass(frozen=True)
class CspInstance:
    """
    Binary CSP over variables 0..n-1.

    Only non-free constraints are stored; they are the edges of the
    auxiliary graph H.
    """

    n: int
    constraints: Dict[Pair, Constraint] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError(f"Variable count must be non-negative, got {self.n}")
        for (i, j), kind in self.constraints.items():
            if not 0 <= i < j < self.n:
                raise ValidationError(f"Constraint pair {(i, j)} is not i < j < {self.n}")
            if kind is Constraint.FREE:
                raise ValidationError(f"Free constraint stored as an edge: {(i, j)}")

    @classmethod
    def from_pairs(cls, n: int, pairs: Dict[Pair, Constraint]) -> "CspInstance":
        """Build from any pair map, normalizing order and dropping free pairs."""
        edges = {}
        for (i, j), kind in pairs.items():
            if kind is not Constraint.FREE:
                edges[(min(i, j), max(i, j))] = kind
        return cls(n, edges)

    def constraint(self, i: int, j: int) -> Constraint:
        return self.constraints.get((min(i, j), max(i, j)), Constraint.FREE)

    def satisfied_by(self, g: Assignment) -> bool:
        return all(kind.allows(g[i], g[j]) for (i, j), kind in self.constraints.items())


@dataclass(frozen=True)
class AssignmentCount:
    """Number of satisfying assignments: 2^k when satisfiable, else 0."""

    satisfiable: bool
    component_count: int
    total: int


class ParityUnionFind:
    """
    Union-find where every node stores its parity relative to its parent.

    The parity of a node relative to its root is the XOR along the path;
    `union(a, b, p)` records g(a) XOR g(b) = p and reports conflicts.
    """

    def __init__(self, size: int) -> None:
        self._parent = list(range(size))
        self._rank = [0] * size
        self._parity = [0] * size
        self.components = size

    def find(self, x: int) -> Tuple[int, int]:
        """Root of x and the parity of x relative to it (with path compression)."""
        path = []
        while self._parent[x] != x:
            path.append(x)
            x = self._parent[x]
        root = x
        # Re-point the path at the root, accumulating parity from the top
        acc = 0
        for node in reversed(path):
            acc ^= self._parity[node]
            self._parity[node] = acc
            self._parent[node] = root
        return root, (self._parity[path[0]] if path else 0)

    def union(self, a: int, b: int, parity: int) -> bool:
        """Record g(a) XOR g(b) = parity. Returns False on conflict."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == parity

        if self._rank[ra] < self._rank[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._parity[rb] = pa ^ pb ^ parity
        if self._rank[ra] == self._rank[rb]:
            self._rank[ra] += 1
        self.components -= 1
        return True


def build_csp(box: BoxSpec, v: LatticePoint) -> CspInstance:
    """
    Pairwise constraints for the sign choices of a lattice point.

    For i < j with g = gcd(2a_i, 2a_j): v_i ≡ v_j allows equal choices,
    v_i ≡ -v_j allows unequal ones (both residues negate together).
    """
    classify(box, v)
    edges: Dict[Pair, Constraint] = {}
    coords, sides = v.coords, box.sides
    for i in range(box.n):
        for j in range(i + 1, box.n):
            g = gcd(2 * sides[i], 2 * sides[j])
            same = (coords[i] - coords[j]) % g == 0
            opposite = (coords[i] + coords[j]) % g == 0
            if same and opposite:
                continue
            if same:
                edges[(i, j)] = Constraint.REQUIRE_EQUAL
            elif opposite:
                edges[(i, j)] = Constraint.REQUIRE_UNEQUAL
            else:
                edges[(i, j)] = Constraint.IMPOSSIBLE
    return CspInstance(box.n, edges)


def _solve(csp: CspInstance) -> Tuple[ParityUnionFind, bool]:
    uf = ParityUnionFind(csp.n)
    ok = True
    for (i, j), kind in csp.constraints.items():
        if kind is Constraint.IMPOSSIBLE:
            ok = False
            uf.union(i, j, 0)
        elif not uf.union(i, j, 0 if kind is Constraint.REQUIRE_EQUAL else 1):
            ok = False
    return uf, ok


def count_assignments(csp: CspInstance) -> AssignmentCount:
    """
    Count satisfying assignments.

    Each connected component of H admits 0 or 2 assignments (an assignment
    and its complement), so the total is 2^k or 0.
    """
    uf, ok = _solve(csp)
    k = uf.components
    total = 2**k if ok else 0
    logger.debug(f"CSP n={csp.n}, edges={len(csp.constraints)}: components={k}, total={total}")
    return AssignmentCount(satisfiable=ok, component_count=k, total=total)


def enumerate_assignments(csp: CspInstance, cap: Optional[int] = None) -> List[Assignment]:
    """
    List all satisfying assignments.

    One value is chosen per component root; every other variable follows
    from its stored parity.

    Raises:
        CapExceededError: More assignments than the enumeration cap
    """
    limit = get_config().assignment_cap if cap is None else cap
    uf, ok = _solve(csp)
    if not ok:
        return []
    total = 2**uf.components
    if total > limit:
        logger.warning(f"CSP has {total} assignments, enumeration cap is {limit}")
        raise CapExceededError(
            f"{total} satisfying assignments exceed the enumeration cap", cap=limit, required=total
        )

    located = [uf.find(i) for i in range(csp.n)]
    roots = sorted({root for root, _ in located})
    assignments = []
    for values in product((0, 1), repeat=len(roots)):
        root_value = dict(zip(roots, values))
        assignments.append(tuple(root_value[root] ^ parity for root, parity in located))
    return assignments
