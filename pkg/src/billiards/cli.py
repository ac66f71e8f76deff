# =============================================================================
#  Filename: cli.py
#
#  Short Description: Command-line surface for crossing-number queries
#
#  Creation date: 2026-10-19
# =============================================================================

"""
billiards CLI

Commands:
- simulate: walk the trajectory and dump it (json, csv or svg)
- crossing: crossing number of a point (analytic, simulated or both)
- times: crossing times and directions of a point
- verify: cross-check analytic results against simulation on box families
- bounce: bouncing-point counts b_0..b_n
- bench: analytic query vs full simulation timing
- intersections: self-intersection points of the trajectory

Exit codes: 0 success, 1 usage/validation error, 2 verification mismatch,
3 cap refusal.
"""

import importlib
import json
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple

import typer
from rich.console import Console
from rich.table import Table

from src.billiards.analytic import (
    Method,
    bounce_table_enumerated,
    bounce_table_formula,
    crossing_directions,
    crossing_number,
    crossing_times,
    intersection_points,
)
from src.billiards.board import BoxSpec, LatticePoint, end_corner, make_box, scale_point
from src.billiards.config import BilliardConfig, get_config
from src.billiards.errors import CapExceededError, ValidationError
from src.billiards.numthy import parse_rationals
from src.billiards.render import envelope, family_envelope, trajectory_svg, visits_csv
from src.billiards.utils import jsonable, setup_logging, timed_ns
from src.billiards.verify import box_family, run_verification
from src.billiards.walker import torus_segments, trace_point, visits, walk_reflect
from src.logging import RunLogger

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_CAP = 3

app = typer.Typer(
    name="billiards",
    help="Crossing numbers of billiard trajectories in boxes with commensurable sides.",
    no_args_is_help=True,
    add_completion=False,
)

stderr = Console(stderr=True)


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    SVG = "svg"


class QueryMethod(str, Enum):
    ANALYTIC = "analytic"
    SIMULATE = "simulate"
    BOTH = "both"


@dataclass
class CommandContext:
    """Per-invocation configuration and run log."""

    config: BilliardConfig
    runs: RunLogger
    run_id: str
    result: Dict[str, Any] = field(default_factory=dict)


def _emit(payload: Any) -> None:
    typer.echo(json.dumps(jsonable(payload), indent=2))


@contextmanager
def command_run(name: str, params: Dict[str, Any], **overrides: Any) -> Iterator[CommandContext]:
    """
    Configure logging, open a run record and translate package errors into
    exit codes.
    """
    try:
        config = get_config(**overrides)
    except ValidationError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_USAGE)
    setup_logging(config)
    runs = RunLogger(config.run_log_dir)
    record = runs.start_run(name, params)
    ctx = CommandContext(config=config, runs=runs, run_id=record.run_id)
    try:
        yield ctx
    except CapExceededError as e:
        runs.log_error(record.run_id, str(e), {"cap": e.cap, "required": e.required})
        runs.end_run(record.run_id)
        _emit({"error": str(e), "cap": e.cap, "required": e.required})
        raise typer.Exit(EXIT_CAP)
    except ValidationError as e:
        runs.log_error(record.run_id, str(e))
        runs.end_run(record.run_id)
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_USAGE)
    except typer.Exit:
        runs.end_run(record.run_id, ctx.result)
        raise
    else:
        runs.end_run(record.run_id, ctx.result)


def _box(sides: str) -> BoxSpec:
    return make_box(parse_rationals(sides))


def _box_and_point(sides: str, point: str) -> Tuple[LatticePoint, BoxSpec]:
    return scale_point(_box(sides), parse_rationals(point))


SidesOption = typer.Option(..., "--sides", help="Comma-separated side lengths, each int or int/int")
PointOption = typer.Option(..., "--point", help="Comma-separated coordinates, each int or int/int")
SimCapOption = typer.Option(None, "--sim-cap", help="Maximum simulation steps (env BILLIARD_SIM_CAP)")
EnumCapOption = typer.Option(None, "--enum-cap", help="Maximum lattice points to scan (env BILLIARD_ENUM_CAP)")


@app.command()
def simulate(
    sides: str = SidesOption,
    output_format: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="json, csv or svg"),
    unfolded: bool = typer.Option(False, "--unfolded", help="SVG: also draw the unfolded line on 2T"),
    colored: bool = typer.Option(False, "--colored", help="SVG: color corresponding segments alike"),
    sim_cap: Optional[int] = SimCapOption,
):
    """Walk the trajectory and print its polyline and visits."""
    params = {"sides": sides, "format": output_format.value, "unfolded": unfolded, "colored": colored}
    with command_run("simulate", params, sim_cap=sim_cap) as ctx:
        box = _box(sides)
        if output_format is OutputFormat.SVG and box.n != 2:
            raise ValidationError(f"SVG output needs a 2-dimensional box, got n={box.n}")
        (visit_map, polyline), elapsed = timed_ns(lambda: walk_reflect(box, ctx.config.sim_cap))
        ctx.runs.log_timing(ctx.run_id, "walk_reflect", elapsed)
        ctx.result = {"t_final": visit_map.t_final, "vertices": len(polyline.vertices)}

        if output_format is OutputFormat.CSV:
            typer.echo(visits_csv(box, visit_map), nl=False)
        elif output_format is OutputFormat.SVG:
            torus = torus_segments(box) if unfolded else None
            typer.echo(trajectory_svg(box, polyline, torus, colored), nl=False)
        else:
            _emit(envelope(
                box,
                Method.SIMULATION.value,
                polyline=[list(v.coords) for v in polyline.vertices],
                end_corner=list(end_corner(box).coords),
                t_final=visit_map.t_final,
                visits=[
                    {"point": list(coords), "count": visit_map.counts[coords], "times": ts}
                    for coords, ts in sorted(visit_map.times.items())
                ],
            ))


@app.command()
def crossing(
    sides: str = SidesOption,
    point: str = PointOption,
    method: QueryMethod = typer.Option(QueryMethod.ANALYTIC, "--method", help="analytic, simulate or both"),
    sim_cap: Optional[int] = SimCapOption,
):
    """Crossing number of a point."""
    params = {"sides": sides, "point": point, "method": method.value}
    with command_run("crossing", params, sim_cap=sim_cap) as ctx:
        v, box = _box_and_point(sides, point)
        fields: Dict[str, Any] = {"point": list(v.coords)}
        analytic_m = simulated_m = None
        used = Method.SIMULATION.value

        if method in (QueryMethod.ANALYTIC, QueryMethod.BOTH):
            result, analytic_ns = timed_ns(lambda: crossing_number(box, v))
            ctx.runs.log_timing(ctx.run_id, "analytic", analytic_ns)
            analytic_m, used = result.m, result.method.value
            fields.update(analytic_m=analytic_m, analytic_ns=analytic_ns)
        if method in (QueryMethod.SIMULATE, QueryMethod.BOTH):
            (visit_map, _), simulate_ns = timed_ns(lambda: walk_reflect(box, ctx.config.sim_cap))
            ctx.runs.log_timing(ctx.run_id, "simulate", simulate_ns)
            simulated_m = visits(visit_map, v)
            fields.update(simulated_m=simulated_m, simulate_ns=simulate_ns)

        fields["m"] = analytic_m if analytic_m is not None else simulated_m
        if method is QueryMethod.BOTH:
            agree = analytic_m == simulated_m
            fields["agree"] = agree
            ctx.runs.log_check(ctx.run_id, "analytic-vs-simulation", agree, fields)
        payload = envelope(box, used if method is not QueryMethod.BOTH else "both", **fields)
        ctx.result = payload
        _emit(payload)
        if method is QueryMethod.BOTH and not fields["agree"]:
            raise typer.Exit(EXIT_MISMATCH)


@app.command()
def times(
    sides: str = SidesOption,
    point: str = PointOption,
    check: bool = typer.Option(False, "--check", help="Compare with the reflection walker"),
    sim_cap: Optional[int] = SimCapOption,
):
    """Crossing times and outgoing directions of a non-corner point."""
    params = {"sides": sides, "point": point, "check": check}
    with command_run("times", params, sim_cap=sim_cap) as ctx:
        v, box = _box_and_point(sides, point)
        result = crossing_times(box, v, ctx.config.assignment_cap)
        fields: Dict[str, Any] = {
            "point": list(v.coords),
            "m": result.m,
            "times": list(result.times),
            "directions": [list(d) for _, d in crossing_directions(box, v)],
        }
        agree = True
        if check:
            walked = trace_point(box, v, ctx.config.sim_cap)
            agree = walked == list(result.times)
            fields.update(simulated_times=walked, agree=agree)
            ctx.runs.log_check(ctx.run_id, "times-vs-walker", agree)
        payload = envelope(box, result.method.value, **fields)
        ctx.result = payload
        _emit(payload)
        if not agree:
            raise typer.Exit(EXIT_MISMATCH)


def _verify_table(report) -> Table:
    table = Table(title="Verification")
    table.add_column("check")
    table.add_column("count", justify="right")
    table.add_row("boxes checked", str(report.boxes_checked))
    table.add_row("points checked", str(report.points_checked))
    table.add_row("mismatches", str(len(report.mismatches)))
    table.add_row("not a power of two", str(len(report.power_of_two_violations)))
    table.add_row("coprime formula violations", str(len(report.coprime_formula_violations)))
    table.add_row("identity failures", str(len(report.identity_failures)))
    table.add_row("skipped boxes", str(len(report.skipped_boxes)))
    return table


VERIFY_METHOD = "analytic-vs-simulation"


@app.command()
def verify(
    sides: Optional[List[str]] = typer.Option(None, "--sides", help="Verify this box; repeat for a list of boxes"),
    max_dim: int = typer.Option(3, "--max-dim", min=1, help="Family: largest dimension"),
    max_side: int = typer.Option(5, "--max-side", min=1, help="Family: largest integer side"),
    max_lcm: int = typer.Option(1000, "--max-lcm", min=1, help="Family: largest ell"),
    canonical: bool = typer.Option(False, "--canonical", help="Family: non-decreasing side tuples only"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Process pool size (env BILLIARD_WORKERS)"),
    sim_cap: Optional[int] = SimCapOption,
    enum_cap: Optional[int] = EnumCapOption,
    quiet: bool = typer.Option(False, "--quiet", help="No summary table on stderr"),
):
    """Cross-check the analytic method against simulation."""
    params = {
        "sides": sides, "max_dim": max_dim, "max_side": max_side,
        "max_lcm": max_lcm, "canonical": canonical,
    }
    with command_run("verify", params, sim_cap=sim_cap, enum_cap=enum_cap, workers=workers) as ctx:
        if sides:
            explicit = [_box(s) for s in sides]
            boxes: List[Tuple[int, ...]] = [tuple(box.sides) for box in explicit]
        else:
            explicit = []
            boxes = list(box_family(max_dim, max_side, max_lcm, canonical))
        report = run_verification(
            boxes, ctx.config.workers, ctx.config.sim_cap, ctx.config.enum_cap
        )
        ctx.runs.log_check(ctx.run_id, "verification", report.clean, {
            "boxes": report.boxes_checked, "points": report.points_checked,
        })

        if len(explicit) == 1:
            payload = envelope(explicit[0], VERIFY_METHOD, **report.to_payload())
        elif explicit:
            payload = family_envelope(
                VERIFY_METHOD, boxes=[[str(s) for s in box.sides_rational] for box in explicit], **report.to_payload()
            )
        else:
            family = {"max_dim": max_dim, "max_side": max_side, "max_lcm": max_lcm, "canonical": canonical}
            payload = family_envelope(VERIFY_METHOD, family=family, **report.to_payload())
        ctx.result = {"clean": report.clean, "incomplete": report.incomplete}
        _emit(payload)
        if not quiet:
            stderr.print(_verify_table(report))
        if not report.clean:
            raise typer.Exit(EXIT_MISMATCH)
        if report.incomplete:
            raise typer.Exit(EXIT_CAP)


@app.command()
def bounce(
    sides: str = SidesOption,
    check: bool = typer.Option(False, "--check", help="Run formula and enumeration and compare"),
    enum_cap: Optional[int] = EnumCapOption,
):
    """Bouncing-point counts b_0..b_n."""
    params = {"sides": sides, "check": check}
    with command_run("bounce", params, enum_cap=enum_cap) as ctx:
        box = _box(sides)
        fields: Dict[str, Any] = {}
        if box.is_pairwise_coprime():
            table = bounce_table_formula(box)
            if check:
                enumerated = bounce_table_enumerated(box, ctx.config.enum_cap)
                agree = enumerated.by_k == table.by_k
                fields.update(enumerated=list(enumerated.by_k), agree=agree)
                ctx.runs.log_check(ctx.run_id, "formula-vs-enumeration", agree)
        else:
            table = bounce_table_enumerated(box, ctx.config.enum_cap)
            fields["notice"] = "formula skipped: sides are not pairwise coprime"
            stderr.print(f"[yellow]{fields['notice']}[/yellow]")
        payload = envelope(box, table.method, b=list(table.by_k), **fields)
        ctx.result = payload
        _emit(payload)
        if fields.get("agree") is False:
            raise typer.Exit(EXIT_MISMATCH)


def _walked_count(v: LatticePoint, walked: List[int]) -> int:
    # t = 0 is not a visit; the origin still counts once
    return 1 if not any(v.coords) else len(walked)


@app.command()
def bench(
    sides: str = SidesOption,
    point: str = PointOption,
    repeat: int = typer.Option(5, "--repeat", min=1, help="Analytic repetitions (best is reported)"),
    sim_cap: Optional[int] = SimCapOption,
):
    """Time an analytic query against a full simulation."""
    params = {"sides": sides, "point": point, "repeat": repeat}
    with command_run("bench", params, sim_cap=sim_cap) as ctx:
        v, box = _box_and_point(sides, point)
        runs = [timed_ns(lambda: crossing_number(box, v)) for _ in range(repeat)]
        result = runs[0][0]
        analytic_ns = min(ns for _, ns in runs)
        ctx.runs.log_timing(ctx.run_id, "analytic", analytic_ns)

        fields: Dict[str, Any] = {"point": list(v.coords), "m": result.m, "analytic_ns": analytic_ns}
        try:
            walked, simulate_ns = timed_ns(lambda: trace_point(box, v, ctx.config.sim_cap))
            fields.update(simulate_ns=simulate_ns, simulated_m=_walked_count(v, walked))
            ctx.runs.log_timing(ctx.run_id, "simulate", simulate_ns)
        except CapExceededError as e:
            fields["simulate_ns"] = "skipped"
            ctx.runs.log_check(ctx.run_id, "simulation", False, {"skipped": str(e)})
        payload = envelope(box, "bench", **fields)
        ctx.result = payload
        _emit(payload)


@app.command()
def intersections(
    sides: str = SidesOption,
    enum_cap: Optional[int] = EnumCapOption,
):
    """Self-intersection points (crossing number >= 2)."""
    with command_run("intersections", {"sides": sides}, enum_cap=enum_cap) as ctx:
        box = _box(sides)
        points = intersection_points(box, ctx.config.enum_cap)
        payload = envelope(
            box,
            Method.CSP.value,
            count=len(points),
            points=[{"point": list(v.coords), "m": m} for v, m in points],
        )
        ctx.result = {"count": len(points)}
        _emit(payload)


# typer raises through its own click exceptions module, vendored or not
_parser_errors = importlib.import_module(typer.Exit.__module__)


def main() -> None:
    """Console entry point; parser usage errors exit with 1."""
    try:
        code = app(standalone_mode=False)
    except _parser_errors.UsageError as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except _parser_errors.Abort:
        sys.exit(EXIT_USAGE)
    sys.exit(code if isinstance(code, int) else EXIT_OK)


if __name__ == "__main__":
    main()
