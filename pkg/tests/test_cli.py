import csv
import io
import subprocess
import sys

import pytest

from nobelnet.cli import build_parser, main

from helpers import read_tree, write_cli_workspace


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_centrality_harmonic_f1(capsys):
    code, out, _ = run(["centrality", "--dataset", "F1", "--year", "1975",
                        "--measure", "harmonic"], capsys)
    assert code == 0
    table = {r["node_id"]: r for r in rows(out)}
    assert float(table["P"]["score"]) == pytest.approx(5 / 6, abs=1e-9)
    assert table["P"]["score"].startswith("0.833333")
    assert [table[k]["rank"] for k in "PABC"] == ["1", "2", "3", "3"]


def test_centrality_arithmetic_f1(capsys):
    code, out, _ = run(["centrality", "--dataset", "f1", "--measure", "arithmetic"], capsys)
    table = {r["node_id"]: float(r["score"]) for r in rows(out)}
    assert code == 0
    assert table["P"] == pytest.approx(0.25) and table["A"] == pytest.approx(1 / 9)


def test_timeline_f1(capsys):
    code, out, _ = run(["timeline", "--dataset", "F1"], capsys)
    assert code == 0
    assert [(r["year"], r["total"]) for r in rows(out)] == [("1972", "2"), ("1975", "2")]


def test_dataset_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("NOBELNET_DATA", "F1")
    code, out, _ = run(["timeline"], capsys)
    assert code == 0 and out.startswith("year,")


@pytest.mark.parametrize("name", sorted(build_parser().subcommands))
def test_help_exits_zero(name, capsys):
    code, out, _ = run([name, "--help"], capsys)
    assert code == 0 and "usage:" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "nobelnet.cli", "validate", "--dataset", "F1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "errors=0" in res.stdout


def test_validate_exit_codes(tmp_path, capsys):
    assert run(["validate", "--dataset", "F1"], capsys)[0] == 0
    (tmp_path / "nodes.csv").write_text(
        "id,name,gender,laureate,prize_year,candidate,degree_year,degree_institution,sources\n"
        "a,,unknown,0,,0,,,\nb,,unknown,0,,0,,,\n")
    (tmp_path / "edges.csv").write_text(
        "advisor_id,student_id,kind,source\na,b,phd,\nb,a,phd,\n")
    code, out, _ = run(["validate", "--dataset", str(tmp_path)], capsys)
    assert code == 1 and "cycle" in out


def test_usage_errors(tmp_path, capsys):
    assert run(["centrality", "--dataset", "F1", "--bogus"], capsys)[0] == 2
    assert run(["centrality", "--dataset", str(tmp_path / "nowhere")], capsys)[0] == 2
    assert run(["centrality", "--nodes", str(tmp_path / "n.csv"),
                "--edges", str(tmp_path / "e.csv")], capsys)[0] == 2
    assert run(["centrality", "--dataset", "F1", "--year", "1950"], capsys)[0] == 2
    assert run(["subgraph", "--dataset", "F1", "--root", "Z"], capsys)[0] == 2
    assert run(["centrality", "--dataset", "F1", "--config", str(tmp_path / "none.cfg")],
               capsys)[0] == 2
    assert run([], capsys)[0] == 2


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\ndataset = F1\nmeasure = arithmetic\ntop = 1\n")
    code, out, _ = run(["centrality", "--config", str(cfg)], capsys)
    assert code == 0
    assert [(r["measure"], r["node_id"]) for r in rows(out)] == [("arithmetic", "P")]
    code, out, _ = run(["centrality", "--config", str(cfg), "--measure", "harmonic"], capsys)
    assert [(r["measure"], r["node_id"]) for r in rows(out)] == [("harmonic", "P")]


@pytest.mark.parametrize("text", ["dataset = F1\ncolour = red\n", "dataset = F1\nmeasure = cubic\n",
                                  "dataset F1\n"])
def test_config_errors(tmp_path, capsys, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    assert run(["centrality", "--config", str(cfg)], capsys)[0] == 2


def test_config_boolean_flag(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("dataset = F1\nhistory = yes\nmeasure = harmonic\n")
    code, out, _ = run(["centrality", "--config", str(cfg)], capsys)
    assert {r["year"] for r in rows(out)} == {"1970", "1972", "1975"}


def test_build_outputs(tmp_path, capsys):
    code, _, _ = run(["build", "--dataset", "F1", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "final_edges.csv", "final_nodes.csv", "membership.csv", "series.csv"]
    series = rows((tmp_path / "series.csv").read_text())
    assert [(r["year"], r["nodes"], r["components"]) for r in series] == [
        ("1970", "2", "1"), ("1972", "3", "1"), ("1975", "4", "1")]


def test_subgraph_highlights_new_laureates(tmp_path, capsys):
    code, out, _ = run(["subgraph", "--dataset", "F1", "--root", "A"], capsys)
    assert code == 0
    assert '"C" [label="Person C", style=filled, fillcolor=magenta];' in out
    assert '"A" -> "C";' in out and '"P"' not in out


def test_candidates_outputs(tmp_path, capsys):
    argv = write_cli_workspace(tmp_path)["candidates"]
    code, _, _ = run(argv + ["--out", str(tmp_path / "o")], capsys)
    assert code == 0
    cand = rows((tmp_path / "o" / "candidates.csv").read_text())
    scores = {r["measure"]: float(r["score"]) for r in cand}
    assert scores == {"incloseness_network": pytest.approx(11 / 24),
                      "incloseness_laureates": pytest.approx(0.5)}
    cf = {r["node_id"]: int(r["delta"]) for r in rows((tmp_path / "o" / "counterfactual.csv").read_text())}
    assert cf == {"A": 0, "B": 1, "C": 0}


def test_fetch_offline_builds_dataset(tmp_path, capsys):
    argv = write_cli_workspace(tmp_path)["fetch"]
    code, out, _ = run(argv + ["--out", str(tmp_path / "o")], capsys)
    assert code == 0
    edges = (tmp_path / "o" / "edges.csv").read_text().splitlines()
    assert edges[1].startswith("at:1,at:2,phd,academic_tree")


def test_fetch_gap_is_data_error(tmp_path, capsys):
    code, _, err = run(["fetch", "404", "--offline", "--cache-dir", str(tmp_path)], capsys)
    assert code == 1 and "gap\t404" in err


@pytest.mark.parametrize("name", ["validate", "build", "centrality", "timeline", "universities",
                                  "subgraph", "candidates", "baseline", "fetch"])
def test_subcommand_deterministic(name, tmp_path, capsys):
    argv = write_cli_workspace(tmp_path / "ws")[name]
    trees = []
    for i in range(2):
        out = tmp_path / f"run{i}"
        assert main(argv + ["--out", str(out)]) == 0
        trees.append(read_tree(out))
    capsys.readouterr()
    assert trees[0] and trees[0] == trees[1]


def test_every_subcommand_has_a_determinism_run(tmp_path):
    assert set(write_cli_workspace(tmp_path)) == set(build_parser().subcommands)
