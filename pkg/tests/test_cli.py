import json

import pytest

from geodim.cli import main
from geodim.geograph import read_edge_list
from geodim.wd import wd


def test_wd_table(capsys):
    assert main(["wd", "--max-d", "5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "d,w_d"
    assert len(lines) == 6
    d, w = lines[3].split(",")
    assert d == "3" and float(w) == pytest.approx(15 / 32, abs=1e-12)
    assert float(lines[2].split(",")[1]) == pytest.approx(wd(2), rel=1e-11)


def test_gen_then_estimate(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert main(["gen", "--density", "torus", "--d", "2", "--n", "3000", "--nrd", "40", "--seed", "5",
                 "--out", str(out)]) == 0
    err = capsys.readouterr().err
    g = read_edge_list(out.read_text())
    assert f"edges={g.edge_count}" in err and "max_degree=" in err
    assert main(["estimate", "--input", str(out), "--method", "W3", "--seed", "1"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert set(result) == {"method", "W", "delta", "clamped", "failure", "diagnostics"}
    assert result["method"] == "W3" and result["delta"] == 2


def test_gen_reproducible(tmp_path):
    args = ["gen", "--density", "beta:a=2,b=2", "--d", "2", "--n", "400", "--r", "0.1", "--seed", "3"]
    main(args + ["--out", str(tmp_path / "a")])
    main(args + ["--out", str(tmp_path / "b")])
    assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()


def test_gen_empty(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["gen", "--density", "torus", "--d", "2", "--n", "0", "--n32rd", "1", "--out", str(out)]) == 0
    assert out.read_text() == "n 0\n"


def test_estimate_failure_is_reported(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("n 3\n1 2\n")
    assert main(["estimate", "--input", str(path), "--method", "W4", "--seed", "0", "--cap", "9"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["W"] is None and result["delta"] is None and result["failure"] in ("degenerate-degree",)


def test_configuration_error_exit_code(tmp_path):
    assert main(["gen", "--density", "torus", "--d", "2", "--n", "10", "--r", "0.7", "--out",
                 str(tmp_path / "x")]) == 2
    assert main(["gen", "--density", "ellipse", "--d", "2", "--n", "10", "--r", "0.1", "--out",
                 str(tmp_path / "x")]) == 2


def test_parse_error_exit_code(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("n 2\n0 1\n1 1\n")
    assert main(["estimate", "--input", str(path), "--method", "W3"]) == 3


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["estimate", "--input", "x", "--method", "W9"])
    assert info.value.code == 2


def test_simulate(tmp_path, capsys):
    cfg = {"density": "torus", "true_d": 2, "n": [1000, 2000], "radius_rule": {"nrd": 30},
           "methods": ["W2", "W3"], "trials": 3, "seed": 4}
    (tmp_path / "cfg.json").write_text(json.dumps(cfg))
    runs = []
    for workers in ("1", "2", "1"):
        out, summ = tmp_path / f"o{len(runs)}.csv", tmp_path / f"s{len(runs)}.json"
        assert main(["simulate", "--config", str(tmp_path / "cfg.json"), "--out", str(out), "--summary", str(summ),
                     "--workers", workers]) == 0
        runs.append((out.read_bytes(), summ.read_bytes()))
    assert runs[0] == runs[1] == runs[2]
    summary = json.loads(runs[0][1])
    assert len(summary["summary"]) == 4
    assert summary["config"]["n"] == [1000, 2000]


def test_simulate_bad_config(tmp_path):
    (tmp_path / "cfg.json").write_text(json.dumps({"density": "torus", "true_d": 2, "n": 100,
                                                   "radius_rule": {"r": 0.9}}))
    assert main(["simulate", "--config", str(tmp_path / "cfg.json"), "--out", str(tmp_path / "o.csv")]) == 2
    assert not (tmp_path / "o.csv").exists()
    assert main(["simulate", "--config", str(tmp_path / "missing.json"), "--out", str(tmp_path / "o.csv")]) == 2
