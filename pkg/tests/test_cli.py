"""Command-line interface, exercised in process through main(argv)."""

import csv
import io
import json

import pytest

import irrstrength as ir
from irrstrength.cli import main

from conftest import cycle


@pytest.fixture()
def c4_file(tmp_path):
    p = tmp_path / "c4.txt"
    ir.save_edge_list(cycle(4), p)
    return str(p)


@pytest.fixture(scope="module")
def reg2000_file(tmp_path_factory):
    g = ir.generate(ir.GraphFamilySpec("random-regular", n=2000, d=666, seed=1))
    p = tmp_path_factory.mktemp("graphs") / "reg2000.txt"
    ir.save_edge_list(g, p)
    return str(p)


class TestGen:
    def test_stdout(self, capsys):
        assert main(["gen", "--family", "petersen"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("n 10\n")
        assert out.count("\n") == 16  # header plus 15 edges

    def test_to_file(self, tmp_path, capsys):
        dest = tmp_path / "g.txt"
        code = main(
            ["gen", "--family", "cycle", "--n", "5", "--out", str(dest)]
        )
        assert code == 0
        assert "wrote 5 vertices, 5 edges" in capsys.readouterr().out
        assert ir.load_edge_list(dest) == cycle(5)

    def test_deterministic_random_regular(self, capsys):
        args = ["gen", "--family", "random-regular", "--n", "20", "--d", "3",
                "--seed", "9"]
        main(args)
        first = capsys.readouterr().out
        main(args)
        assert capsys.readouterr().out == first

    def test_family_errors_are_usage(self, capsys):
        code = main(["gen", "--family", "random-regular", "--n", "5",
                     "--d", "3"])
        assert code == 2

    def test_unknown_family_rejected_by_parser(self):
        with pytest.raises(SystemExit) as exc:
            main(["gen", "--family", "moebius"])
        assert exc.value.code == 2


class TestSolve:
    def test_exact_on_square(self, c4_file, capsys):
        code = main(
            ["solve", "--in", c4_file, "--algo", "exact", "--report", "-"]
        )
        assert code == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["algorithm"] == "exact"
        assert rep["achieved_k"] == 3
        assert rep["valid"] is True
        assert rep["safe_lower"] == 3
        assert rep["n"] == 4 and rep["d"] == 2

    def test_auto_picks_exact_for_tiny(self, c4_file, capsys):
        assert main(["solve", "--in", c4_file, "--report", "-"]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["algorithm"] == "exact"

    def test_human_line(self, c4_file, capsys):
        assert main(["solve", "--in", c4_file, "--algo", "exact"]) == 0
        out = capsys.readouterr().out
        assert "exact: irregular with k=3 (safe lower bound 3)" in out

    def test_auto_fallback_for_irregular_degrees(self, tmp_path, capsys):
        g = ir.Graph(20, [(i, i + 1) for i in range(19)])
        p = tmp_path / "path20.txt"
        ir.save_edge_list(g, p)
        code = main(["solve", "--in", str(p), "--report", "-"])
        assert code == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["algorithm"] == "fallback"
        assert rep["valid"] is True
        assert rep["safe_lower"] is None  # bounds need a regular graph

    def test_paper_success_with_artifacts(self, reg2000_file, tmp_path, capsys):
        rep_path = tmp_path / "report.json"
        w_path = tmp_path / "weights.txt"
        code = main(
            [
                "solve", "--in", reg2000_file, "--algo", "paper",
                "--seed", "1", "--report", str(rep_path),
                "--weights-out", str(w_path),
            ]
        )
        assert code == 0
        assert "paper: irregular with k=795" in capsys.readouterr().out
        rep = json.loads(rep_path.read_text())
        assert rep["valid"] is True
        assert rep["achieved_k"] == 795
        assert rep["resamples"] == 23
        assert rep["params"]["epsilon"] == "1/10"
        assert set(rep["timings"]) >= {"partition", "step2", "step3"}
        g = ir.load_edge_list(reg2000_file)
        w = ir.load_weights(w_path, g)
        assert ir.is_irregular(g, w)

    def test_paper_failure_exit_code(self, tmp_path, capsys):
        g = ir.generate(ir.GraphFamilySpec("random-regular", n=60, d=8, seed=0))
        p = tmp_path / "g.txt"
        ir.save_edge_list(g, p)
        code = main(
            ["solve", "--in", str(p), "--algo", "paper", "--report", "-"]
        )
        assert code == 3
        rep = json.loads(capsys.readouterr().out)
        assert rep["valid"] is False
        assert rep["stage_failure"] == "partition"
        assert rep["achieved_k"] is None

    def test_auto_retries_with_fallback(self, tmp_path, capsys):
        g = ir.generate(ir.GraphFamilySpec("random-regular", n=60, d=8, seed=0))
        p = tmp_path / "g.txt"
        ir.save_edge_list(g, p)
        code = main(["solve", "--in", str(p), "--report", "-"])
        assert code == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["algorithm"] == "fallback"
        assert rep["valid"] is True
        assert rep["stage_failure"] is None

    def test_infinite_graph_exit_code(self, tmp_path, capsys):
        p = tmp_path / "k2.txt"
        p.write_text("n 2\n0 1\n")
        code = main(["solve", "--in", str(p), "--report", "-"])
        assert code == 4
        rep = json.loads(capsys.readouterr().out)
        assert rep["stage_failure"] == "precheck"
        assert rep["valid"] is False

    def test_bad_eps_usage_error(self, c4_file):
        assert main(["solve", "--in", c4_file, "--eps", "0.5"]) == 2
        assert main(["solve", "--in", c4_file, "--gamma", "0.2"]) == 2

    def test_missing_file_usage_error(self):
        assert main(["solve", "--in", "/nonexistent/g.txt"]) == 2

    def test_no_timings(self, c4_file, capsys):
        code = main(
            ["solve", "--in", c4_file, "--algo", "exact", "--report", "-",
             "--no-timings"]
        )
        assert code == 0
        rep = json.loads(capsys.readouterr().out)
        assert "timings" not in rep


class TestVerify:
    def test_valid(self, c4_file, tmp_path, capsys):
        w = tmp_path / "w.txt"
        w.write_text("0 1 1\n0 3 1\n1 2 2\n2 3 3\n")
        assert main(["verify", "--in", c4_file, "--weights", str(w)]) == 0
        assert "valid irregular weighting, k=3" in capsys.readouterr().out

    def test_invalid(self, c4_file, tmp_path, capsys):
        w = tmp_path / "w.txt"
        w.write_text("0 1 1\n0 3 1\n1 2 1\n2 3 1\n")
        assert main(["verify", "--in", c4_file, "--weights", str(w)]) == 5
        out = capsys.readouterr().out
        assert "not irregular" in out
        assert "weighted degree" in out

    def test_malformed_weights_usage_error(self, c4_file, tmp_path):
        w = tmp_path / "w.txt"
        w.write_text("0 1 1\n")
        assert main(["verify", "--in", c4_file, "--weights", str(w)]) == 2


class TestBench:
    GRID = "n=12;d=3;eps=0.1;gamma=0.04;seeds=0:2"

    def test_fallback_grid_csv(self, capsys):
        code = main(["bench", "--grid", self.GRID, "--algo", "fallback"])
        assert code == 0
        out = capsys.readouterr().out
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 2
        for seed, row in zip(("0", "1"), rows):
            assert row["n"] == "12" and row["d"] == "3"
            assert row["seed"] == seed
            assert row["algorithm"] == "fallback"
            assert row["valid"] == "true"
            assert int(row["achieved_k"]) >= int(row["safe_lower"])
            assert float(row["t_total"]) >= 0

    def test_header_order(self, capsys):
        main(["bench", "--grid", self.GRID, "--algo", "fallback",
              "--no-timings"])
        header = capsys.readouterr().out.splitlines()[0]
        assert header == (
            "n,d,eps,gamma,seed,algorithm,valid,achieved_k,safe_lower,"
            "paper_lower,resamples,stage_failure,t_partition,t_step2,"
            "t_step3,t_total"
        )

    def test_no_timings_deterministic(self, capsys):
        args = ["bench", "--grid", self.GRID, "--algo", "fallback",
                "--no-timings"]
        main(args)
        first = capsys.readouterr().out
        main(args)
        assert capsys.readouterr().out == first

    def test_gen_failure_row(self, capsys):
        code = main(
            ["bench", "--grid", "n=5;d=3;eps=0.1;gamma=0.04;seeds=0:1",
             "--algo", "fallback", "--no-timings"]
        )
        assert code == 0
        row = next(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert row["valid"] == "false"
        assert row["stage_failure"].startswith("gen:")

    def test_paper_rows_report_stage(self, capsys):
        code = main(
            ["bench", "--grid", "n=60;d=8;eps=0.1;gamma=0.04;seeds=0:1"]
        )
        assert code == 0
        row = next(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert row["valid"] == "false"
        assert row["stage_failure"] == "partition"
        assert row["eps"] == "0.1" and row["gamma"] == "0.04"

    def test_seed_list_and_file_output(self, tmp_path, capsys):
        dest = tmp_path / "bench.csv"
        code = main(
            ["bench", "--grid", "n=12;d=3;seeds=2,5", "--algo", "fallback",
             "--out", str(dest), "--no-timings"]
        )
        assert code == 0
        assert "wrote" in capsys.readouterr().out
        rows = list(csv.DictReader(dest.open()))
        assert [r["seed"] for r in rows] == ["2", "5"]

    def test_malformed_grid_usage_error(self, capsys):
        assert main(["bench", "--grid", "n=12;seeds=0:1"]) == 2
        assert main(["bench", "--grid", "nonsense"]) == 2
        assert main(["bench", "--grid", "n=12;d=3;seeds=3:3"]) == 2

    def test_bad_grid_eps_usage_error(self, capsys):
        code = main(
            ["bench", "--grid", "n=12;d=3;eps=0.9;gamma=0.04;seeds=0:1"]
        )
        assert code == 2


class TestExactBudgetPath:
    def test_budget_failure_reported(self, tmp_path, capsys):
        g = ir.generate(ir.GraphFamilySpec("petersen"))
        p = tmp_path / "pet.txt"
        ir.save_edge_list(g, p)
        code = main(
            ["solve", "--in", str(p), "--algo", "exact", "--budget", "100",
             "--report", "-"]
        )
        assert code == 3
        rep = json.loads(capsys.readouterr().out)
        assert rep["stage_failure"] == "search"
        assert rep["valid"] is False
