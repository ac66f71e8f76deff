"""CLI tests through typer's CliRunner and the console entry point."""

import json
import sys

import pytest
from typer.testing import CliRunner

from src.billiards import cli
from src.billiards.cli import app
from src.billiards.render import MARGIN, PIXELS_PER_UNIT

runner = CliRunner()

FOUR_BY_THREE_PATH = [[0, 0], [3, 3], [4, 2], [2, 0], [0, 2], [1, 3], [4, 0]]


def invoke_json(*args):
    result = runner.invoke(app, list(args))
    return result, json.loads(result.stdout)


class TestSimulate:
    def test_json_polyline(self):
        result, payload = invoke_json("simulate", "--sides", "4,3")
        assert result.exit_code == 0
        assert payload["polyline"] == FOUR_BY_THREE_PATH
        assert payload["end_corner"] == [4, 0]
        assert payload["t_final"] == 12
        assert payload["convention"] == "visits-exclude-start"
        assert payload["method"] == "simulation"

    def test_rational_sides_are_scaled(self):
        result, payload = invoke_json("simulate", "--sides", "1,3/4")
        assert result.exit_code == 0
        assert payload["box"] == ["1", "3/4"]
        assert payload["scale"] == 4
        assert payload["polyline"] == FOUR_BY_THREE_PATH

    def test_csv_rows(self):
        result = runner.invoke(app, ["simulate", "--sides", "2,6", "--format", "csv"])
        assert result.exit_code == 0
        lines = result.stdout.strip().split("\n")
        assert lines[0] == "t,v1,v2"
        assert lines[1:] == ["1,1,1", "2,2,2", "3,1,3", "4,0,4", "5,1,5", "6,2,6"]

    def test_svg_is_deterministic_and_traces_the_path(self):
        first = runner.invoke(app, ["simulate", "--sides", "4,3", "--format", "svg"])
        second = runner.invoke(app, ["simulate", "--sides", "4,3", "--format", "svg"])
        assert first.exit_code == 0
        assert first.stdout == second.stdout
        points = " ".join(
            f"{MARGIN + x * PIXELS_PER_UNIT},{MARGIN + (3 - y) * PIXELS_PER_UNIT}" for x, y in FOUR_BY_THREE_PATH
        )
        assert f'points="{points}"' in first.stdout
        assert 'class="unfolded"' not in first.stdout

    def test_svg_unfolded_and_colored(self):
        result = runner.invoke(
            app, ["simulate", "--sides", "4,3", "--format", "svg", "--unfolded", "--colored"]
        )
        assert result.exit_code == 0
        assert result.stdout.count('class="unfolded"') == len(FOUR_BY_THREE_PATH) - 1
        assert result.stdout.count('class="trajectory"') == len(FOUR_BY_THREE_PATH) - 1

    def test_svg_needs_two_dimensions(self):
        result = runner.invoke(app, ["simulate", "--sides", "2,3,5", "--format", "svg"])
        assert result.exit_code == 1

    def test_cap_refusal_exit_code(self):
        result, payload = invoke_json("simulate", "--sides", "4,3", "--sim-cap", "5")
        assert result.exit_code == 3
        assert payload["cap"] == 5
        assert "use analytic method" in payload["error"]


class TestCrossing:
    def test_both_methods_agree(self):
        result, payload = invoke_json("crossing", "--sides", "4,3", "--point", "1,1", "--method", "both")
        assert result.exit_code == 0
        assert payload["m"] == 2
        assert payload["agree"] is True
        assert payload["analytic_m"] == payload["simulated_m"] == 2

    def test_unvisited_point(self):
        result, payload = invoke_json("crossing", "--sides", "2,6", "--point", "2,4")
        assert result.exit_code == 0
        assert payload["m"] == 0

    def test_start_corner(self):
        _, payload = invoke_json("crossing", "--sides", "4,3", "--point", "0,0")
        assert payload["m"] == 1
        assert payload["method"] == "corner-convention"

    def test_fractional_point_rescales(self):
        _, payload = invoke_json("crossing", "--sides", "4,3", "--point", "1/4,1/4")
        assert payload["sides"] == [16, 12]
        assert payload["point"] == [1, 1]
        assert payload["m"] == 1

    def test_point_outside_box(self):
        result = runner.invoke(app, ["crossing", "--sides", "4,3", "--point", "5,0"])
        assert result.exit_code == 1

    def test_bad_token(self):
        result = runner.invoke(app, ["crossing", "--sides", "4,1.5", "--point", "1,1"])
        assert result.exit_code == 1


class TestTimes:
    def test_times_with_check(self):
        result, payload = invoke_json("times", "--sides", "4,3", "--point", "3,1", "--check")
        assert result.exit_code == 0
        assert payload["times"] == [5, 11]
        assert payload["simulated_times"] == [5, 11]
        assert payload["directions"] == [[-1, -1], [1, -1]]

    def test_corner_is_a_usage_error(self):
        result = runner.invoke(app, ["times", "--sides", "4,3", "--point", "4,0"])
        assert result.exit_code == 1


class TestVerify:
    def test_single_box(self):
        result, payload = invoke_json("verify", "--sides", "4,3", "--quiet")
        assert result.exit_code == 0
        assert payload["points_checked"] == 20
        assert payload["mismatches"] == []
        assert payload["clean"] is True

    def test_report_schema(self):
        _, payload = invoke_json("verify", "--sides", "4,3", "--quiet")
        assert payload["box"] == ["4", "3"]
        assert payload["ell"] == 12
        assert payload["method"] == "analytic-vs-simulation"
        assert payload["convention"] == "visits-exclude-start"
        assert payload["theorem1_violations"] == []
        assert payload["theorem2_violations"] == []
        assert payload["identity_failures"] == []

    def test_explicit_list_of_boxes(self):
        result, payload = invoke_json("verify", "--sides", "4,3", "--sides", "2,3", "--quiet")
        assert result.exit_code == 0
        assert payload["boxes_checked"] == 2
        assert payload["points_checked"] == 20 + 12
        assert payload["boxes"] == [["4", "3"], ["2", "3"]]
        assert payload["box"] is None
        assert payload["convention"] == "visits-exclude-start"

    def test_non_coprime_box(self):
        result, payload = invoke_json("verify", "--sides", "2,4", "--quiet")
        assert result.exit_code == 0
        assert payload["clean"] is True

    def test_small_family(self):
        result, payload = invoke_json(
            "verify", "--max-dim", "2", "--max-side", "4", "--max-lcm", "12", "--quiet"
        )
        assert result.exit_code == 0
        assert payload["boxes_checked"] == 4 + 16
        assert payload["family"]["max_lcm"] == 12
        assert payload["method"] == "analytic-vs-simulation"

    def test_incomplete_run(self):
        result, payload = invoke_json("verify", "--sides", "4,3", "--sim-cap", "5", "--quiet")
        assert result.exit_code == 3
        assert payload["incomplete"] is True

    def test_summary_table_on_stderr(self):
        result = runner.invoke(app, ["verify", "--sides", "2,3"])
        assert result.exit_code == 0
        assert "points checked" in result.stderr
        assert json.loads(result.stdout)["points_checked"] == 12


class TestBounce:
    def test_check_agrees(self):
        result, payload = invoke_json("bounce", "--sides", "4,3", "--check")
        assert result.exit_code == 0
        assert payload["b"] == [3, 5, 2]
        assert payload["enumerated"] == [3, 5, 2]
        assert payload["agree"] is True
        assert payload["method"] == "formula"

    def test_non_coprime_falls_back_to_enumeration(self):
        result, payload = invoke_json("bounce", "--sides", "2,6")
        assert result.exit_code == 0
        assert payload["method"] == "enumerated"
        assert "notice" in payload
        assert payload["b"][0] == 3

    def test_unit_square(self):
        _, payload = invoke_json("bounce", "--sides", "1,1")
        assert payload["b"] == [0, 0, 2]


class TestBench:
    def test_small_box(self):
        result, payload = invoke_json("bench", "--sides", "4,3", "--point", "1,1")
        assert result.exit_code == 0
        assert payload["ell"] == 12
        assert isinstance(payload["analytic_ns"], int)
        assert isinstance(payload["simulate_ns"], int)
        assert payload["simulated_m"] == payload["m"] == 2

    def test_simulation_skipped_above_cap(self):
        result, payload = invoke_json(
            "bench", "--sides", "2,3,5,7,11,13,17,19", "--point", "1,1,1,1,1,1,1,1", "--sim-cap", "1000"
        )
        assert result.exit_code == 0
        assert payload["ell"] == 9699690
        assert payload["simulate_ns"] == "skipped"
        assert payload["m"] == 128


class TestIntersections:
    def test_four_by_three(self):
        result, payload = invoke_json("intersections", "--sides", "4,3")
        assert result.exit_code == 0
        assert payload["count"] == 3
        assert [p["point"] for p in payload["points"]] == [[1, 1], [2, 2], [3, 1]]


class TestEntryPoint:
    def run_main(self, monkeypatch, *args):
        monkeypatch.setattr(sys, "argv", ["billiards", *args])
        with pytest.raises(SystemExit) as info:
            cli.main()
        return info.value.code

    def test_missing_option_is_exit_one(self, monkeypatch):
        assert self.run_main(monkeypatch, "crossing", "--sides", "4,3") == 1

    def test_unknown_command_is_exit_one(self, monkeypatch):
        assert self.run_main(monkeypatch, "teleport") == 1

    def test_success(self, monkeypatch, capsys):
        assert self.run_main(monkeypatch, "crossing", "--sides", "4,3", "--point", "1,1") == 0
        assert json.loads(capsys.readouterr().out)["m"] == 2

    def test_validation_error(self, monkeypatch):
        assert self.run_main(monkeypatch, "bounce", "--sides", "0,3") == 1

    def test_run_log_is_written(self, monkeypatch, tmp_path):
        monkeypatch.setenv("BILLIARD_RUN_LOG_DIR", str(tmp_path))
        assert self.run_main(monkeypatch, "crossing", "--sides", "4,3", "--point", "1,1") == 0
        files = list(tmp_path.glob("runs_*.jsonl"))
        assert len(files) == 1
        record = json.loads(files[0].read_text().splitlines()[0])
        assert record["command"] == "crossing"
        assert record["success"] is True

    def test_non_zero_exit_still_closes_the_run(self, monkeypatch, tmp_path):
        monkeypatch.setenv("BILLIARD_RUN_LOG_DIR", str(tmp_path))
        assert self.run_main(monkeypatch, "verify", "--sides", "4,3", "--sim-cap", "5", "--quiet") == 3
        files = list(tmp_path.glob("runs_*.jsonl"))
        assert len(files) == 1
        record = json.loads(files[0].read_text().splitlines()[0])
        assert record["command"] == "verify"
        assert record["result"] == {"clean": True, "incomplete": True}
