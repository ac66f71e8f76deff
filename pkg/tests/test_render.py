"""Tests for JSON envelopes, CSV tables and SVG output."""

import re

import pytest

from src.billiards.board import make_box
from src.billiards.errors import ValidationError
from src.billiards.render import PALETTE, envelope, trajectory_svg, visits_csv, visits_frame
from src.billiards.walker import torus_segments, walk_reflect


def test_envelope_fields():
    box = make_box([1, "3/4"])
    payload = envelope(box, "csp", m=2)
    assert payload == {
        "box": ["1", "3/4"],
        "sides": [4, 3],
        "scale": 4,
        "ell": 12,
        "method": "csp",
        "convention": "visits-exclude-start",
        "m": 2,
    }


def test_visits_frame_is_sorted_by_time(box_4x3):
    visit_map, _ = walk_reflect(box_4x3)
    frame = visits_frame(box_4x3, visit_map)
    assert list(frame.columns) == ["t", "v1", "v2"]
    assert frame["t"].tolist() == list(range(1, 13))
    assert frame.iloc[6].tolist() == [7, 1, 1]


def test_csv_header_for_three_dimensions():
    box = make_box([1, 2, 3])
    visit_map, _ = walk_reflect(box)
    assert visits_csv(box, visit_map).splitlines()[0] == "t,v1,v2,v3"


def test_svg_markers_and_torus(box_4x3):
    _, polyline = walk_reflect(box_4x3)
    svg = trajectory_svg(box_4x3, polyline, torus_segments(box_4x3))
    assert svg.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    assert 'version="1.1"' in svg
    assert svg.count('class="start"') == svg.count('class="end"') == 1
    assert 'stroke-dasharray="6,4"' in svg
    assert svg.rstrip().endswith("</svg>")


def test_svg_rejects_other_dimensions():
    box = make_box([2, 3, 5])
    _, polyline = walk_reflect(box)
    with pytest.raises(ValidationError):
        trajectory_svg(box, polyline)


def test_colored_unfolded_segments_match_the_trajectory(box_4x3):
    _, polyline = walk_reflect(box_4x3)
    svg = trajectory_svg(box_4x3, polyline, torus_segments(box_4x3), colored=True)
    solid = re.findall(r'class="trajectory"[^>]*stroke="(#[0-9a-f]{6})"', svg)
    dashed = re.findall(r'class="unfolded"[^>]*stroke="(#[0-9a-f]{6})"', svg)
    assert len(solid) == len(dashed) == 6
    assert dashed == solid
    assert dashed[1:3] == [PALETTE[1], PALETTE[2]]
