# =============================================================================
#  Filename: verify.py
#
#  Short Description: Cross-check of the analytic method against simulation
#
#  Creation date: 2026-10-19
# =============================================================================

"""
Verification harness.

For every box of a family, walks the trajectory both ways and compares each
lattice point's analytic crossing number with the simulated visit count,
together with the structural properties (walk length, end corner, parity,
sum identity, coprime closed forms, bounce counts, crossing times).
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from math import lcm
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from loguru import logger

from src.billiards.analytic import (
    bounce_table_enumerated,
    bounce_table_formula,
    coprime_crossing_formula,
    crossing_number,
    crossing_times,
    crossing_upper_bound,
    is_power_of_two_or_zero,
    require_enumerable,
    sum_identity_check,
)
from src.billiards.board import classify, make_box
from src.billiards.errors import CapExceededError
from src.billiards.walker import check_walk, visits, walk_reflect, walk_unfolded


@dataclass
class VerifyReport:
    """Aggregated outcome of a verification run; clean when every list is empty."""

    boxes_checked: int = 0
    points_checked: int = 0
    mismatches: List[Dict[str, Any]] = field(default_factory=list)
    power_of_two_violations: List[Dict[str, Any]] = field(default_factory=list)
    coprime_formula_violations: List[Dict[str, Any]] = field(default_factory=list)
    identity_failures: List[Dict[str, Any]] = field(default_factory=list)
    skipped_boxes: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def incomplete(self) -> bool:
        return bool(self.skipped_boxes)

    @property
    def clean(self) -> bool:
        return not (
            self.mismatches
            or self.power_of_two_violations
            or self.coprime_formula_violations
            or self.identity_failures
        )

    def to_payload(self) -> Dict[str, Any]:
        """Report fields under their published JSON names."""
        return {
            "boxes_checked": self.boxes_checked,
            "points_checked": self.points_checked,
            "mismatches": self.mismatches,
            "theorem1_violations": self.power_of_two_violations,
            "theorem2_violations": self.coprime_formula_violations,
            "identity_failures": self.identity_failures,
            "skipped_boxes": self.skipped_boxes,
            "clean": self.clean,
            "incomplete": self.incomplete,
        }

    def merge(self, other: "VerifyReport") -> None:
        self.boxes_checked += other.boxes_checked
        self.points_checked += other.points_checked
        self.mismatches.extend(other.mismatches)
        self.power_of_two_violations.extend(other.power_of_two_violations)
        self.coprime_formula_violations.extend(other.coprime_formula_violations)
        self.identity_failures.extend(other.identity_failures)
        self.skipped_boxes.extend(other.skipped_boxes)

    def sort(self) -> None:
        """Put every list in a canonical order so aggregation order does not matter."""
        for items in (
            self.mismatches,
            self.power_of_two_violations,
            self.coprime_formula_violations,
            self.identity_failures,
            self.skipped_boxes,
        ):
            items.sort(key=lambda item: (item["box"], item.get("point", []), str(item)))


def box_family(
    max_dim: int, max_side: int, max_lcm: int, canonical: bool = False
) -> Iterator[Tuple[int, ...]]:
    """
    Integer side tuples with 1 <= n <= max_dim, a_i <= max_side, lcm <= max_lcm.

    With canonical=True only non-decreasing tuples are produced.
    """
    for n in range(1, max_dim + 1):
        for sides in product(range(1, max_side + 1), repeat=n):
            if canonical and list(sides) != sorted(sides):
                continue
            if lcm(*sides) <= max_lcm:
                yield sides


def verify_box(sides: Sequence[int], sim_cap: Optional[int] = None, enum_cap: Optional[int] = None) -> VerifyReport:
    """Run every check on one integer box."""
    report = VerifyReport()
    box = make_box(list(sides))
    label = list(box.sides)
    try:
        reflected, _ = walk_reflect(box, sim_cap)
        unfolded = walk_unfolded(box, sim_cap)
        require_enumerable(box, enum_cap)
    except CapExceededError as e:
        report.skipped_boxes.append({"box": label, "reason": str(e)})
        return report

    report.boxes_checked = 1
    if reflected != unfolded:
        report.identity_failures.append({"box": label, "check": "reflect-vs-unfolded"})
    for failure in check_walk(box, reflected):
        report.identity_failures.append({"box": label, "check": "walk", "detail": failure})

    coprime = box.is_pairwise_coprime()
    for v in box.lattice():
        report.points_checked += 1
        point = list(v.coords)
        analytic_m = crossing_number(box, v).m
        simulated_m = visits(reflected, v)
        if analytic_m != simulated_m:
            report.mismatches.append(
                {"box": label, "point": point, "analytic_m": analytic_m, "simulated_m": simulated_m}
            )
        if not is_power_of_two_or_zero(simulated_m):
            report.power_of_two_violations.append({"box": label, "point": point, "m": simulated_m})

        if classify(box, v).is_corner:
            continue
        if analytic_m > crossing_upper_bound(box, v):
            report.identity_failures.append({"box": label, "point": point, "check": "upper-bound"})
        if coprime and coprime_crossing_formula(box, v) != simulated_m:
            report.coprime_formula_violations.append(
                {
                    "box": label,
                    "point": point,
                    "formula_m": coprime_crossing_formula(box, v),
                    "simulated_m": simulated_m,
                }
            )
        walker_times = tuple(reflected.times.get(v.coords, []))
        if analytic_m and crossing_times(box, v).times != walker_times:
            report.identity_failures.append({"box": label, "point": point, "check": "crossing-times"})

    lhs, rhs, equal = sum_identity_check(box, enum_cap)
    if not equal:
        report.identity_failures.append({"box": label, "check": "sum-identity", "lhs": lhs, "rhs": rhs})
    if coprime:
        formula = bounce_table_formula(box).by_k
        enumerated = bounce_table_enumerated(box, enum_cap).by_k
        if formula != enumerated:
            report.identity_failures.append(
                {"box": label, "check": "bounce-table", "formula": list(formula), "enumerated": list(enumerated)}
            )
    return report


def _verify_task(args: Tuple[Tuple[int, ...], Optional[int], Optional[int]]) -> VerifyReport:
    sides, sim_cap, enum_cap = args
    return verify_box(sides, sim_cap, enum_cap)


def run_verification(
    boxes: Iterable[Sequence[int]],
    workers: int = 1,
    sim_cap: Optional[int] = None,
    enum_cap: Optional[int] = None,
) -> VerifyReport:
    """
    Verify a family of boxes, optionally across a process pool.

    Per-box reports are merged and sorted, so the result does not depend on
    completion order.
    """
    tasks = [(tuple(sides), sim_cap, enum_cap) for sides in boxes]
    logger.info(f"Verifying {len(tasks)} boxes with {workers} worker(s)")
    report = VerifyReport()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for partial in pool.map(_verify_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))):
                report.merge(partial)
    else:
        for task in tasks:
            report.merge(_verify_task(task))
    report.sort()

    if report.clean:
        logger.success(f"Verified {report.boxes_checked} boxes, {report.points_checked} points: clean")
    else:
        logger.error(
            f"Verification found {len(report.mismatches)} mismatches, "
            f"{len(report.power_of_two_violations)} non-power-of-two counts, "
            f"{len(report.coprime_formula_violations)} coprime formula violations, "
            f"{len(report.identity_failures)} identity failures"
        )
    return report
