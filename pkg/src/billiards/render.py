# =============================================================================
#  Filename: render.py
#
#  Short Description: JSON envelopes, CSV visit tables and SVG trajectories
#
#  Creation date: 2026-10-19
# =============================================================================

"""
Output formats for the CLI.

- JSON: every result object is wrapped in an envelope carrying the box, its
  scale, ell, the method and the visit convention.
- CSV: one row per visit, header `t,v1,...,vn`, built with pandas.
- SVG: the trajectory in T (solid) and optionally the unfolded line on the
  torus 2T (dashed); 2-D boxes only. Output is deterministic.
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src.billiards.board import BoxSpec, end_corner
from src.billiards.config import CONVENTION
from src.billiards.errors import ValidationError
from src.billiards.walker import Polyline, VisitMap

PALETTE = ("#2e7d32", "#c62828", "#ef6c00", "#00838f", "#6a1b9a", "#1565c0", "#9e9d24", "#ad1457")

PIXELS_PER_UNIT = 40
MARGIN = 20


def envelope(box: BoxSpec, method: str, **fields: Any) -> Dict[str, Any]:
    """JSON result object with the fields every command reports."""
    payload = {
        "box": [str(s) for s in box.sides_rational],
        "sides": list(box.sides),
        "scale": box.scale,
        "ell": box.ell,
        "method": method,
        "convention": CONVENTION,
    }
    payload.update(fields)
    return payload


def family_envelope(method: str, **fields: Any) -> Dict[str, Any]:
    """Envelope for results over several boxes; the per-box fields are null."""
    payload = {
        "box": None,
        "sides": None,
        "scale": None,
        "ell": None,
        "method": method,
        "convention": CONVENTION,
    }
    payload.update(fields)
    return payload


def visits_frame(box: BoxSpec, visit_map: VisitMap) -> pd.DataFrame:
    """One row per visit, sorted by time."""
    rows = [
        (t, *coords)
        for coords, times in visit_map.times.items()
        for t in times
    ]
    columns = ["t"] + [f"v{i + 1}" for i in range(box.n)]
    frame = pd.DataFrame(rows, columns=columns)
    return frame.sort_values("t", kind="stable").reset_index(drop=True)


def visits_csv(box: BoxSpec, visit_map: VisitMap) -> str:
    return visits_frame(box, visit_map).to_csv(index=False, lineterminator="\n")


def trajectory_svg(
    box: BoxSpec,
    polyline: Polyline,
    torus: Optional[Sequence[Tuple[int, Tuple[int, ...], Tuple[int, ...]]]] = None,
    colored: bool = False,
) -> str:
    """
    Render a 2-D trajectory as SVG 1.1.

    Args:
        box: The (scaled) box; must be 2-dimensional
        polyline: Trajectory in T from walk_reflect
        torus: Optional segments from torus_segments, drawn dashed on 2T
        colored: Give corresponding segments of both paths the same color

    Raises:
        ValidationError: Box is not 2-dimensional
    """
    if box.n != 2:
        raise ValidationError(f"SVG output needs a 2-dimensional box, got n={box.n}")

    a1, a2 = box.sides
    extent_x, extent_y = (2 * a1, 2 * a2) if torus is not None else (a1, a2)
    width = extent_x * PIXELS_PER_UNIT + 2 * MARGIN
    height = extent_y * PIXELS_PER_UNIT + 2 * MARGIN

    def xy(x: int, y: int) -> Tuple[int, int]:
        # y grows upwards on the board
        return MARGIN + x * PIXELS_PER_UNIT, MARGIN + (extent_y - y) * PIXELS_PER_UNIT

    parts: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
    ]

    # Lattice grid over the drawn extent
    parts.append('<g stroke="#e0e0e0" stroke-width="1">')
    for x in range(extent_x + 1):
        (x0, y0), (x1, y1) = xy(x, 0), xy(x, extent_y)
        parts.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"/>')
    for y in range(extent_y + 1):
        (x0, y0), (x1, y1) = xy(0, y), xy(extent_x, y)
        parts.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"/>')
    parts.append("</g>")

    # Board outlines
    bx, by = xy(0, a2)
    parts.append(
        f'<rect x="{bx}" y="{by}" width="{a1 * PIXELS_PER_UNIT}" height="{a2 * PIXELS_PER_UNIT}" '
        'fill="none" stroke="#000000" stroke-width="2"/>'
    )
    if torus is not None:
        tx, ty = xy(0, 2 * a2)
        parts.append(
            f'<rect x="{tx}" y="{ty}" width="{2 * a1 * PIXELS_PER_UNIT}" height="{2 * a2 * PIXELS_PER_UNIT}" '
            'fill="none" stroke="#000000" stroke-width="1"/>'
        )

    vertex_times = polyline.vertex_times()

    def segment_color(start_time: int) -> str:
        # Color of the trajectory segment covering (start_time, start_time + 1)
        index = sum(1 for t in vertex_times[1:-1] if t <= start_time)
        return PALETTE[index % len(PALETTE)]

    # Trajectory in T
    if colored:
        for k, (start, end) in enumerate(zip(polyline.vertices, polyline.vertices[1:])):
            (x0, y0), (x1, y1) = xy(*start.coords), xy(*end.coords)
            parts.append(
                f'<line class="trajectory" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" '
                f'stroke="{PALETTE[k % len(PALETTE)]}" stroke-width="3"/>'
            )
    else:
        points = " ".join("{},{}".format(*xy(*v.coords)) for v in polyline.vertices)
        parts.append(
            f'<polyline class="trajectory" points="{points}" fill="none" stroke="#1565c0" stroke-width="3"/>'
        )

    # Unfolded line on 2T
    if torus is not None:
        for start_time, start, end in torus:
            (x0, y0), (x1, y1) = xy(*start), xy(*end)
            color = segment_color(start_time) if colored else "#757575"
            parts.append(
                f'<line class="unfolded" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" '
                f'stroke="{color}" stroke-width="2" stroke-dasharray="6,4"/>'
            )

    # Start and end corners
    for label, corner, fill in (
        ("start", polyline.vertices[0].coords, "#2e7d32"),
        ("end", end_corner(box).coords, "#c62828"),
    ):
        cx, cy = xy(*corner)
        parts.append(f'<circle class="{label}" cx="{cx}" cy="{cy}" r="6" fill="{fill}"/>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
