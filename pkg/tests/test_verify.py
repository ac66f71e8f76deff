"""Tests for the analytic-vs-simulation verification harness."""

import pytest

from src.billiards.verify import VerifyReport, box_family, run_verification, verify_box


def test_four_by_three_is_clean():
    report = verify_box((4, 3))
    assert report.boxes_checked == 1
    assert report.points_checked == 20
    assert report.clean and not report.incomplete


def test_non_coprime_box_is_clean():
    report = verify_box((2, 4))
    assert report.clean
    assert report.coprime_formula_violations == []


def test_cap_marks_box_skipped():
    report = verify_box((4, 3), sim_cap=5)
    assert report.boxes_checked == 0
    assert report.incomplete
    assert report.skipped_boxes[0]["box"] == [4, 3]


def test_enumeration_cap_marks_box_skipped():
    report = verify_box((4, 3), enum_cap=10)
    assert report.incomplete


def test_box_family_bounds():
    family = list(box_family(2, 3, 4))
    assert (1,) in family and (3,) in family
    assert (2, 3) not in family  # lcm 6 > 4
    assert (2, 1) in family and (1, 2) in family
    canonical = list(box_family(2, 3, 4, canonical=True))
    assert (2, 1) not in canonical and (1, 2) in canonical


def test_small_family_is_clean(small_family):
    report = run_verification(small_family)
    assert report.clean
    assert report.boxes_checked == len(small_family)


def test_report_does_not_depend_on_worker_count(small_family):
    sequential = run_verification(small_family, workers=1)
    pooled = run_verification(small_family, workers=2)
    assert sequential == pooled


def test_report_sort_and_clean_flag():
    report = VerifyReport()
    report.mismatches = [{"box": [4, 3], "point": [2, 2]}, {"box": [2, 3], "point": [1, 1]}]
    report.sort()
    assert [m["box"] for m in report.mismatches] == [[2, 3], [4, 3]]
    assert not report.clean


def test_payload_uses_published_names():
    report = VerifyReport()
    report.power_of_two_violations = [{"box": [4, 3], "point": [1, 1], "m": 3}]
    payload = report.to_payload()
    assert payload["theorem1_violations"] == report.power_of_two_violations
    assert payload["theorem2_violations"] == []
    assert payload["clean"] is False and payload["incomplete"] is False


def test_default_family_is_clean():
    report = run_verification(box_family(3, 5, 1000, canonical=True))
    assert report.clean and not report.incomplete


@pytest.mark.slow
def test_full_sweep():
    """Every box with n <= 4, a_i <= 6, ell <= 2000 (side order does not affect m)."""
    report = run_verification(box_family(4, 6, 2000, canonical=True), workers=4)
    assert report.clean
    assert not report.incomplete
    assert report.power_of_two_violations == []
    assert report.coprime_formula_violations == []
