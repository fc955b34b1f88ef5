import json
import math
import os
import subprocess
import sys

import pytest

from rigidlab.cli import main
from rigidlab.fileio import write_json

TWO_PI = 2 * math.pi


@pytest.fixture
def inputs(tmp_path):
    paths = {}

    def put(name, obj):
        p = tmp_path / f"{name}.json"
        write_json(str(p), obj)
        paths[name] = str(p)

    put("triangle", {
        "dimension": 2,
        "points": [[0, 0], [1, 0], [0, 1]],
        "edges": [[0, 1], [0, 2], [1, 2]],
    })
    put("circle_k33", {
        "dimension": 2,
        "A": [[5, 0], [4, 3], [3, 4]],
        "B": [[0, 5], [-3, 4], [-4, 3]],
    })
    put("parallel_k22", {
        "dimension": 2,
        "A": [["1", "0"], ["2", "0"]],
        "B": [["0", "1"], ["0", "2"]],
    })
    put("helix", {
        "kind": "helix", "dimension": 3, "blocks": [[1.0, 1.0, 0.0]],
        "w": [0.5], "offset": [0.0, 0.0, 0.0], "domain": [0.0, 12.0],
    })
    put("circ1", {
        "kind": "helix", "dimension": 2, "blocks": [[1.0, 1.0, 0.0]],
        "w": [], "offset": [0.0, 0.0], "domain": [0.0, TWO_PI],
    })
    put("circ2", {
        "kind": "helix", "dimension": 2, "blocks": [[2.0, 1.0, 0.0]],
        "w": [], "offset": [0.0, 0.0], "domain": [0.0, TWO_PI],
    })
    return tmp_path, paths


def run(argv, out_path=None):
    status = main(argv + (["--output", str(out_path)] if out_path else []))
    report = json.loads(out_path.read_text()) if out_path else None
    return status, report


class TestAnalyze:
    def test_triangle_rigid(self, inputs):
        tmp, paths = inputs
        status, report = run(["analyze", paths["triangle"], "--mode", "exact"], tmp / "r.json")
        assert status == 0
        assert report["is_infinitesimally_rigid"] is True
        assert report["kernel_dim"] == 3
        assert report["trivial_dim"] == 3
        assert report["regularity"]["is_regular_estimate"] is True
        assert report["config"]["mode"] == "exact"

    def test_missing_file_fails(self, inputs):
        tmp, _ = inputs
        status, report = run(["analyze", str(tmp / "nope.json")], tmp / "r.json")
        assert status == 1
        assert "error" in report


class TestBipartite:
    def test_circle_report(self, inputs):
        tmp, paths = inputs
        status, report = run(["bipartite", paths["circle_k33"], "--mode", "exact"], tmp / "b.json")
        assert status == 0
        assert report["classification"] == "vertices_on_quadric"
        assert report["dim_omega_direct"] == 1
        assert report["dim_omega_formula"] == 1
        assert report["formula_matches_direct"] is True
        assert report["kernel_dim_via_stress"] == 4

    def test_c_not_spanning_error_code(self, inputs):
        tmp, paths = inputs
        status, report = run(["bipartite", paths["parallel_k22"], "--mode", "exact"], tmp / "b.json")
        assert status == 1
        assert report["error"]["code"] == "C_not_spanning"
        assert report["classification"] == "C_not_spanning"
        assert report["dim_omega_formula"] is None


class TestCurve:
    def test_helix_report(self, inputs):
        tmp, paths = inputs
        status, report = run(["curve", paths["helix"], "--k", "1"], tmp / "c.json")
        assert status == 0
        assert report["qk"]["is_member_estimate"] is True
        assert len(report["qk"]["profile"]) == 4
        assert report["quadric"]["found"] is True
        assert report["hyperplane"]["found"] is False


class TestFamily:
    def test_writes_equivalent_family(self, inputs):
        tmp, paths = inputs
        out_dir = tmp / "fam"
        status, report = run(
            ["family", paths["circ1"], paths["circ2"], "--out-dir", str(out_dir)],
            tmp / "f.json",
        )
        assert status == 0
        assert report["translation_invariance_holds"] is True
        assert report["pairwise_equivalent"] is True
        assert report["max_edge_discrepancy"] <= 1e-10
        files = report["realization_files"]
        assert len(files) == 10
        first = json.loads((out_dir / "family_000.json").read_text())
        assert first["dimension"] == 2
        assert len(first["A"]) == 4  # d + 2


class TestCensus:
    def test_csv_and_fit(self, inputs):
        tmp, paths = inputs
        csv_path = tmp / "census.csv"
        status, report = run(
            ["census", paths["circ1"], paths["circ2"],
             "--schedule", "16,32,64", "--csv", str(csv_path)],
            tmp / "cen.json",
        )
        assert status == 0
        assert abs(report["fit"]["slope"] - 1.0) <= 0.15
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == "n,distinct_count,sizeA,sizeB,sizeC,triple_count,seconds"
        assert len(lines) == 4
        n, count = lines[1].split(",")[:2]
        assert (int(n), int(count)) == (16, report["counts"][0])

    def test_byte_identical_reports(self, inputs):
        tmp, paths = inputs
        args = ["census", paths["circ1"], paths["circ2"],
                "--schedule", "16,32,64", "--sampler", "uniform", "--seed", "11"]
        run(args, tmp / "a.json")
        run(args, tmp / "b.json")
        assert (tmp / "a.json").read_bytes() == (tmp / "b.json").read_bytes()


class TestSelfcheck:
    def test_passes(self, inputs, capsys):
        tmp, _ = inputs
        status, report = run(["selfcheck"], tmp / "s.json")
        assert status == 0
        assert report["all_passed"] is True
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out


class TestSeedResolution:
    def test_env_seed_used_as_default(self, inputs, monkeypatch):
        tmp, paths = inputs
        monkeypatch.setenv("RIGIDLAB_SEED", "123")
        _, report = run(["analyze", paths["triangle"]], tmp / "r.json")
        assert report["config"]["seed"] == 123

    def test_flag_beats_env(self, inputs, monkeypatch):
        tmp, paths = inputs
        monkeypatch.setenv("RIGIDLAB_SEED", "123")
        _, report = run(["analyze", paths["triangle"], "--seed", "7"], tmp / "r.json")
        assert report["config"]["seed"] == 7


def test_module_entry_point(tmp_path):
    write_json(
        str(tmp_path / "t.json"),
        {"dimension": 2, "points": [[0, 0], [1, 0], [0, 1]], "edges": [[0, 1], [0, 2], [1, 2]]},
    )
    env = dict(os.environ)
    env["PYTHONPATH"] = os.pathsep.join(
        [os.path.join(os.path.dirname(__file__), "..", "src")] + sys.path
    )
    proc = subprocess.run(
        [sys.executable, "-m", "rigidlab", "analyze", str(tmp_path / "t.json")],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["is_infinitesimally_rigid"] is True
