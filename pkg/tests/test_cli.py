import json
from pathlib import Path

from diskfvs.cli import main
from diskfvs.fileio import serialize_graph

from conftest import cycle_graph, path_graph


def write_graph(tmp_path: Path, g, name="g.graph") -> str:
    path = tmp_path / name
    path.write_text(serialize_graph(g))
    return str(path)


class TestGen:
    def test_udg_deterministic_files(self, tmp_path):
        out1 = tmp_path / "a"
        out2 = tmp_path / "b"
        assert main(["gen", "--udg", "-n", "30", "--density", "0.2",
                     "--seed", "1", "--out", str(out1)]) == 0
        assert main(["gen", "--udg", "-n", "30", "--density", "0.2",
                     "--seed", "1", "--out", str(out2)]) == 0
        assert out1.with_suffix(".points").read_bytes() == out2.with_suffix(".points").read_bytes()
        assert out1.with_suffix(".graph").read_bytes() == out2.with_suffix(".graph").read_bytes()

    def test_planted_files(self, tmp_path):
        out = tmp_path / "p"
        assert main(["gen", "--planted", "-k", "3", "--seed", "2",
                     "--out", str(out)]) == 0
        assert out.with_suffix(".points").exists()
        assert out.with_suffix(".graph").exists()

    def test_single_disk(self, tmp_path):
        out = tmp_path / "one"
        assert main(["gen", "--udg", "-n", "1", "--out", str(out)]) == 0
        text = out.with_suffix(".graph").read_text()
        assert text.startswith("p fvs 1 0")

    def test_requires_exactly_one_kind(self, tmp_path):
        assert main(["gen", "--out", str(tmp_path / "x")]) == 2


class TestSolveCommand:
    def test_c4_yes_exit_zero(self, tmp_path, capsys):
        path = write_graph(tmp_path, cycle_graph(4))
        assert main(["solve", path, "--k", "1", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["verdict"] == "yes"
        assert len(payload["fvs"]) == 1
        assert payload["schema"] == 1

    def test_c4_k0_exit_one(self, tmp_path):
        path = write_graph(tmp_path, cycle_graph(4))
        assert main(["solve", path, "--k", "0"]) == 1

    def test_parse_error_exit_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.graph"
        bad.write_text("not a graph\n")
        assert main(["solve", str(bad), "--k", "0"]) == 2
        assert "error" in capsys.readouterr().err

    def test_missing_file_exit_two(self):
        assert main(["solve", "/nonexistent/x.graph", "--k", "0"]) == 2

    def test_points_input(self, tmp_path, capsys):
        out = tmp_path / "inst"
        main(["gen", "--udg", "-n", "15", "--density", "0.5", "--seed", "3",
              "--out", str(out)])
        capsys.readouterr()
        code = main(["solve", str(out.with_suffix(".points")), "--k", "5", "--json"])
        payload = json.loads(capsys.readouterr().out)
        assert code in (0, 1)
        assert payload["verdict"] in ("yes", "no")


class TestOracleCommand:
    def test_matches_solver(self, tmp_path, capsys):
        path = write_graph(tmp_path, cycle_graph(5))
        assert main(["oracle", path, "--k", "1", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["min_fvs"] == 1

    def test_budget_refusal_exit_two(self, tmp_path):
        path = write_graph(tmp_path, path_graph(24))
        assert main(["oracle", path, "--k", "1", "--max-n", "20"]) == 2


class TestValidateCommand:
    def test_clean_instance(self, tmp_path, capsys):
        out = tmp_path / "v"
        main(["gen", "--udg", "-n", "25", "--density", "0.5", "--seed", "4",
              "--out", str(out)])
        capsys.readouterr()
        code = main(["validate", str(out.with_suffix(".points"))])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["violations"] == []
        assert "kappa_observed" in payload
        assert "max_contraction_degree" in payload
        assert "class_count" in payload


class TestCompareCommand:
    def test_agreement(self, tmp_path, capsys):
        path = write_graph(tmp_path, cycle_graph(6))
        assert main(["compare", path, "--k", "1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["agree"] is True


class TestBenchCommand:
    def test_deterministic_csv(self, tmp_path):
        out1 = tmp_path / "b1"
        out2 = tmp_path / "b2"
        args = ["bench", "--k-list", "1,4", "--seeds", "2", "--path-len", "16"]
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert out1.with_suffix(".csv").read_bytes() == out2.with_suffix(".csv").read_bytes()
        header = out1.with_suffix(".csv").read_text().splitlines()[0]
        assert header.startswith("k,seed,n,m,k_planted,weighted_width")
        payload = json.loads(out1.with_suffix(".json").read_text())
        assert payload["schema"] == 1
        assert all(r["verdict"] == "yes" for r in payload["rows"])

    def test_forest_sweep(self, tmp_path):
        out = tmp_path / "f"
        assert main(["bench", "--k-list", "0", "--seeds", "3",
                     "--path-len", "14", "--out", str(out)]) == 0
        payload = json.loads(out.with_suffix(".json").read_text())
        for row in payload["rows"]:
            assert row["verdict"] == "yes"
            assert row["weighted_width"] <= 4
