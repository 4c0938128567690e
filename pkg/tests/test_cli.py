"""Command-line behavior: exit codes, JSON determinism, witness re-checks."""

import json
import math

import numpy as np
import pytest

from mesostab import WeightedGraph, laplacian, principal_minor_direct
from mesostab.cli import main
from mesostab.io import format_edge_list, format_kuramoto, format_matrix_csv
from mesostab.kuramoto import KuramotoSystem

C_TEXT = "0,0,1,-1\n0,-1,1,0\n1,1,-2,0\n-1,0,0,1\n"


@pytest.fixture
def c_matrix(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text(C_TEXT)
    return path


@pytest.fixture
def triangle_file(tmp_path):
    g = WeightedGraph(3, ((1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)))
    path = tmp_path / "triangle.txt"
    path.write_text(format_edge_list(g))
    return path


@pytest.fixture
def two_node_file(tmp_path):
    sys_ = KuramotoSystem(np.array([0.5, -0.5]), np.array([[0.0, 1.0], [1.0, 0.0]]))
    path = tmp_path / "osc.txt"
    path.write_text(format_kuramoto(sys_))
    return path


def run_json(capsys, argv):
    code = main(["--format", "json", *argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestAnalyzeMatrix:
    def test_counterexample_exits_one_with_witnesses(self, capsys, c_matrix):
        code, payload = run_json(capsys, ["analyze-matrix", str(c_matrix)])
        assert code == 1
        report = payload["report"]
        assert report["verdict"] == "fails necessary condition"
        # the cited minor must recompute to the reported value
        witness = report["full_sweep"]["witness"]
        assert witness["type"] == "minor"
        a = -np.array([[0, 0, 1, -1], [0, -1, 1, 0], [1, 1, -2, 0], [-1, 0, 0, 1]], dtype=float)
        recomputed = principal_minor_direct(a, witness["subset"])
        assert recomputed == pytest.approx(witness["value"], rel=1e-9, abs=1e-12)
        assert witness["value"] < 0
        # structural findings: no positive spanning tree, a negative cut
        assert report["positive_spanning_forest"] is None
        cut = report["negative_cut"]
        assert cut is not None and all(w < 0 for _, _, w in cut["crossing_edges"])

    def test_psd_laplacian_exits_zero(self, capsys, tmp_path):
        g = WeightedGraph(3, ((1, 2, 1.0), (2, 3, 2.0)))
        path = tmp_path / "ok.csv"
        path.write_text(format_matrix_csv(-laplacian(g)))
        code, payload = run_json(capsys, ["analyze-matrix", str(path)])
        assert code == 0
        assert payload["report"]["verdict"] == "passes necessary condition"
        assert payload["report"]["certified"]

    def test_json_is_byte_identical_across_runs(self, capsys, c_matrix):
        main(["--format", "json", "analyze-matrix", str(c_matrix)])
        first = capsys.readouterr().out
        main(["--format", "json", "analyze-matrix", str(c_matrix)])
        second = capsys.readouterr().out
        assert first == second
        assert json.loads(first)["schema"] == "mesostab/1"

    def test_non_zero_row_sum_is_input_error(self, capsys, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,0\n0,1\n")
        assert main(["analyze-matrix", str(path)]) == 2
        assert "zero row sums" in capsys.readouterr().err

    def test_parse_error_names_line(self, capsys, tmp_path):
        path = tmp_path / "broken.csv"
        path.write_text("1,2\nx,4\n")
        assert main(["analyze-matrix", str(path)]) == 2
        assert "line 2" in capsys.readouterr().err


class TestAnalyzeGraph:
    def test_triangle_passes(self, capsys, triangle_file):
        code, payload = run_json(capsys, ["analyze-graph", str(triangle_file)])
        assert code == 0
        assert payload["report"]["positive_spanning_forest"] is not None

    def test_negative_path_fails(self, capsys, tmp_path):
        g = WeightedGraph(3, ((1, 2, 1.0), (2, 3, -1.0)))
        path = tmp_path / "neg.txt"
        path.write_text(format_edge_list(g))
        code, payload = run_json(capsys, ["analyze-graph", str(path)])
        assert code == 1
        assert payload["report"]["negative_cut"]["vertices"] == [3]


class TestKuramotoCommand:
    def test_lock_passes_and_lists_tree(self, capsys, two_node_file, tmp_path):
        seeds = tmp_path / "seeds.txt"
        seeds.write_text("0.0 0.1\n")
        code, payload = run_json(capsys, ["kuramoto", str(two_node_file), "--seed-phases", str(seeds)])
        assert code == 0
        assert payload["report"]["verdict"] == "passes necessary condition"
        assert payload["report"]["positive_spanning_forest"] == [[1, 2, pytest.approx(math.cos(math.asin(0.5)))]]
        assert payload["equilibrium"]["spanning_phase_condition"] is True
        phi = payload["equilibrium"]["phases"][0] - payload["equilibrium"]["phases"][1]
        assert abs(phi - math.asin(0.5)) < 1e-8

    def test_anti_lock_fails(self, capsys, two_node_file, tmp_path):
        seeds = tmp_path / "seeds.txt"
        seeds.write_text(f"{math.pi - math.asin(0.5)} 0.0\n")
        code, payload = run_json(capsys, ["kuramoto", str(two_node_file), "--seed-phases", str(seeds)])
        assert code == 1
        assert payload["report"]["positive_spanning_forest"] is None

    def test_infeasible_system_reports_no_lock(self, capsys, tmp_path):
        sys_ = KuramotoSystem(np.array([1.5, -1.5]), np.array([[0.0, 1.0], [1.0, 0.0]]))
        path = tmp_path / "nolock.txt"
        path.write_text(format_kuramoto(sys_))
        code, payload = run_json(capsys, ["kuramoto", str(path)])
        assert code == 1
        assert payload["equilibrium"] is None
        assert "no phase-locked state" in payload["verdict"]


class TestVerifyIdentity:
    def test_triangle_explicit_side(self, capsys, triangle_file):
        code, payload = run_json(capsys, ["verify-identity", str(triangle_file), "--v1", "1,2"])
        assert code == 0
        check = payload["identity"]["checks"][0]
        assert check["v1"] == [1, 2]
        assert abs(check["residual"]) <= check["tolerance"]

    def test_sweep_all_sides(self, capsys, triangle_file):
        code, payload = run_json(capsys, ["verify-identity", str(triangle_file)])
        assert code == 0
        assert len(payload["identity"]["checks"]) == 6
        assert payload["identity"]["all_within_tolerance"]

    def test_guard_violation_is_input_error(self, capsys, tmp_path):
        n = 24
        edges = [(i, i + 1, 1.0) for i in range(1, n)]
        path = tmp_path / "big.txt"
        path.write_text(format_edge_list(WeightedGraph(n, tuple(edges))))
        v1 = ",".join(str(v) for v in range(1, 23))
        assert main(["verify-identity", str(path), "--v1", v1]) == 2
        assert "guard" in capsys.readouterr().err

    def test_sweep_guard_demands_explicit_side(self, capsys, tmp_path):
        n = 16
        edges = [(i, i + 1, 1.0) for i in range(1, n)]
        path = tmp_path / "wide.txt"
        path.write_text(format_edge_list(WeightedGraph(n, tuple(edges))))
        assert main(["verify-identity", str(path)]) == 2
        assert "--v1" in capsys.readouterr().err
        assert main(["verify-identity", str(path), "--v1", "1,2,3"]) == 0


class TestTextOutput:
    def test_prints_twelve_significant_digits(self, capsys, tmp_path):
        g = WeightedGraph(2, ((1, 2, 1 / 3),))
        path = tmp_path / "third.txt"
        path.write_text(format_edge_list(g))
        assert main(["analyze-graph", str(path)]) == 0
        out = capsys.readouterr().out
        assert "0.333333333333" in out


def test_self_test_command(capsys):
    assert main(["self-test"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 5
