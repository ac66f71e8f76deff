"""Hypothesis strategies shared by the property tests."""

from typing import Tuple

from hypothesis import strategies as st

from src.billiards.board import BoxSpec, LatticePoint, make_box
from src.billiards.csp import Constraint, CspInstance


@st.composite
def boxes(draw, max_side: int = 6, max_dim: int = 3) -> BoxSpec:
    return make_box(draw(st.lists(st.integers(1, max_side), min_size=1, max_size=max_dim)))


@st.composite
def boxes_with_points(draw, max_side: int = 6, max_dim: int = 3) -> Tuple[BoxSpec, LatticePoint]:
    box = draw(boxes(max_side, max_dim))
    coords = tuple(draw(st.integers(0, a)) for a in box.sides)
    return box, LatticePoint(coords)


@st.composite
def csp_instances(draw, max_n: int = 12) -> CspInstance:
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(len(pairs), 2 * n))) if pairs else []
    kinds = st.sampled_from([Constraint.REQUIRE_EQUAL, Constraint.REQUIRE_UNEQUAL, Constraint.IMPOSSIBLE])
    # Impossible edges are rare in practice; keep most instances satisfiable
    constraints = {}
    for pair in chosen:
        kind = draw(kinds)
        if kind is Constraint.IMPOSSIBLE and draw(st.integers(0, 4)):
            kind = Constraint.REQUIRE_EQUAL
        constraints[pair] = kind
    return CspInstance(n, constraints)


@st.composite
def congruence_pairs(draw, max_modulus: int = 60, max_items: int = 4):
    count = draw(st.integers(1, max_items))
    return [
        (draw(st.integers(-200, 200)), draw(st.integers(1, max_modulus)))
        for _ in range(count)
    ]
