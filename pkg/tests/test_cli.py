"""CLI contract: exit codes, artifacts, pipeline ordering."""

from __future__ import annotations

import json

from click.testing import CliRunner

from vta.cli import main


def invoke(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


class TestValidate:
    def test_clean_trace_exit_0(self, corpus_dir, tmp_path):
        result = invoke("validate", corpus_dir / "f1_dijkstra.json", "--out", tmp_path)
        assert result.exit_code == 0
        assert (tmp_path / "diagnostics.json").exists()

    def test_flat_ops_exit_1_with_diagnostics(self, corpus_dir, tmp_path):
        result = invoke("validate", corpus_dir / "bad_ops_flat.json", "--out", tmp_path)
        assert result.exit_code == 1
        diags = json.loads((tmp_path / "diagnostics.json").read_text())
        assert any(d["code"] == "OPS_NOT_2D" for d in diags)
        assert "[Previous Error]" in result.output

    def test_missing_file_exit_2(self, tmp_path):
        result = invoke("validate", tmp_path / "nope.json", "--out", tmp_path)
        assert result.exit_code == 2


class TestRender:
    def test_svg_without_rsl_uses_defaults(self, corpus_dir, tmp_path):
        result = invoke("render", corpus_dir / "f1_dijkstra.json",
                        "--backend", "svg", "--out", tmp_path / "out")
        assert result.exit_code == 0
        assert (tmp_path / "out" / "frame_001.svg").exists()

    def test_invalid_trace_exit_1_nothing_written(self, corpus_dir, tmp_path):
        out = tmp_path / "out"
        result = invoke("render", corpus_dir / "bad_dangling_edge.json",
                        "--backend", "tikz", "--out", out)
        assert result.exit_code == 1
        assert not out.exists()

    def test_invalid_rsl_warns_and_falls_back(self, corpus_dir, tmp_path):
        rsl_path = tmp_path / "bad.json"
        rsl_path.write_text(json.dumps({"timeline": {"transition": 99}}))
        result = invoke("render", corpus_dir / "f1_dijkstra.json", "--rsl", rsl_path,
                        "--backend", "svg", "--out", tmp_path / "out")
        assert result.exit_code == 0
        assert "using defaults" in result.output

    def test_lenient_rsl_clamps(self, corpus_dir, tmp_path):
        rsl_path = tmp_path / "bounds.json"
        rsl_path.write_text(json.dumps({"timeline": {"transition": 99}}))
        result = invoke("render", corpus_dir / "f1_dijkstra.json", "--rsl", rsl_path,
                        "--backend", "svg", "--out", tmp_path / "out", "--lenient-rsl")
        assert result.exit_code == 0
        assert "using defaults" not in result.output
        html = (tmp_path / "out" / "index.html").read_text()
        meta = json.loads(html.split('type="application/json">')[1].split("</script>")[0])
        assert meta["transition"] == 2.0

    def test_player_backend(self, corpus_dir, tmp_path, player_assets):
        result = invoke("render", corpus_dir / "f1_dijkstra.json", "--backend", "player",
                        "--out", tmp_path / "out", "--player-assets", player_assets)
        assert result.exit_code == 0
        assert (tmp_path / "out" / "trace.json").exists()
        assert (tmp_path / "out" / "rsl.json").exists()


class TestTrace:
    def test_dijkstra_course_schedule(self, bundled_tasks_dir, tmp_path):
        result = invoke("trace", "dijkstra",
                        bundled_tasks_dir / "task_207_course_schedule.txt",
                        "--out", tmp_path / "trace.json")
        assert result.exit_code == 0
        check = invoke("validate", tmp_path / "trace.json", "--out", tmp_path)
        assert check.exit_code == 0

    def test_incompatible_tracker_exit_1(self, bundled_tasks_dir, tmp_path):
        result = invoke("trace", "bubble_sort",
                        bundled_tasks_dir / "task_207_course_schedule.txt",
                        "--out", tmp_path / "trace.json")
        assert result.exit_code == 1

    def test_sieve_array_task(self, bundled_tasks_dir, tmp_path):
        result = invoke("trace", "sieve_of_eratosthenes",
                        bundled_tasks_dir / "task_204_sieve.txt",
                        "--out", tmp_path / "trace.json")
        assert result.exit_code == 0


class TestReplayCommand:
    def test_state_files(self, corpus_dir, tmp_path):
        result = invoke("replay", corpus_dir / "f1_dijkstra.json", "--out", tmp_path / "states")
        assert result.exit_code == 0
        files = sorted(p.name for p in (tmp_path / "states").iterdir())
        assert files == ["state_000.json", "state_001.json"]
        doc = json.loads((tmp_path / "states" / "state_001.json").read_text())
        assert doc["highlight"] == [2]


class TestRslCommands:
    def test_rsl_check_valid(self, tmp_path):
        path = tmp_path / "rsl.json"
        path.write_text(json.dumps({"timeline": {"transition": 0.5}}))
        assert invoke("rsl-check", path).exit_code == 0

    def test_rsl_check_invalid(self, tmp_path):
        path = tmp_path / "rsl.json"
        path.write_text(json.dumps({"rules": [{"when": {"op": "visit_node"},
                                               "do": {"animation": {"variant": "pulse"}}}]}))
        result = invoke("rsl-check", path)
        assert result.exit_code == 1
        assert "UNKNOWN_OP" in result.output

    def test_rsl_default(self, corpus_dir):
        result = invoke("rsl-default", corpus_dir / "f1_dijkstra.json")
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["layout"]["main"]["type"] == "force_directed"


class TestBench:
    def test_bundled_sample_all_green(self, bundled_tasks_dir, tmp_path, player_assets):
        result = invoke("bench", bundled_tasks_dir, "--out", tmp_path / "bench",
                        "--player-assets", player_assets, "--jobs", 4)
        assert result.exit_code == 0, result.output
        report = json.loads((tmp_path / "bench" / "bench.json").read_text())
        assert report["tasks"] == 9
        assert all(rate == 100.0 for rate in report["stages"].values())
        assert set(report["per_family"]) == {"Array", "DP", "Graph", "Hashtable",
                                             "Sorting", "Tree"}
        assert all(rate == 100.0 for rate in report["per_family"].values())

    def test_corrupt_task_isolated(self, bundled_tasks_dir, tmp_path, player_assets):
        import shutil
        work = tmp_path / "tasks"
        shutil.copytree(bundled_tasks_dir, work)
        (work / "task_broken.txt").write_text("not a task file at all\n")
        result = invoke("bench", work, "--out", tmp_path / "bench",
                        "--backends", "svg", "--player-assets", player_assets)
        assert result.exit_code == 1  # the broken row fails, the run completes
        report = json.loads((tmp_path / "bench" / "bench.json").read_text())
        assert report["tasks"] == 10
        rows = {r["task"]: r for r in report["rows"]}
        assert rows["task_broken.txt"]["error"]
        good = [r for name, r in rows.items() if name != "task_broken.txt"]
        assert all(r["render_ok"]["svg"] for r in good)

    def test_aggregate_counts_match_rows(self, bundled_tasks_dir, tmp_path, player_assets):
        invoke("bench", bundled_tasks_dir, "--out", tmp_path / "bench",
               "--backends", "svg", "--player-assets", player_assets)
        report = json.loads((tmp_path / "bench" / "bench.json").read_text())
        ok_rows = sum(1 for r in report["rows"]
                      if r["trace_ok"] and r["validate_ok"] and all(r["render_ok"].values()))
        total_family_ok = sum(
            round(rate / 100.0 * sum(1 for r in report["rows"] if r["family"] == fam))
            for fam, rate in report["per_family"].items())
        assert ok_rows == total_family_ok == report["tasks"]


class TestSyntaxErrorExitCode:
    def test_broken_json_is_environmental(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"vta_version": ')
        result = invoke("validate", path, "--out", tmp_path)
        assert result.exit_code == 2
        diags = json.loads((tmp_path / "diagnostics.json").read_text())
        assert diags[0]["code"] == "SYNTAX_ERROR"
