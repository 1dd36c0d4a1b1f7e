import json

import pytest

from qwalk import cli


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_walk_csv_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, _, _ = run(["walk", "--graph", "line", "--steps", "50", "--eta", "0.3", "--alpha-over-pi", "0.25", "-o", str(path)], capsys)
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "x,probability"
    assert len(lines) == 1 + 2 * 50 + 3
    moments = json.loads((tmp_path / "a.moments.json").read_text())
    assert moments["steps"] == 50


def test_summary_on_stdout(tmp_path, capsys):
    code, out, _ = run(["walk", "--graph", "line", "--steps", "100", "-o", str(tmp_path / "w.csv")], capsys)
    assert code == 0
    assert json.loads(out)["moments"]["skewness"] == pytest.approx(0.7158, abs=1e-4)


def test_config_round_trip(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    first = tmp_path / "first.json"
    args = ["walk", "--graph", "lattice", "--coin", "grover4", "--init", "sym-grover", "--steps", "12", "--format", "json"]
    assert run(args + ["-o", str(first), "--save-config", str(cfg)], capsys)[0] == 0
    saved = json.loads(cfg.read_text())
    assert saved["coin"] == "grover4" and saved["steps"] == 12
    second = tmp_path / "second.json"
    assert run(["--config", str(cfg), "walk", "-o", str(second)], capsys)[0] == 0
    assert first.read_bytes() == second.read_bytes()


def test_output_directory_from_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path))
    assert run(["limit", "--n", "5", "--T", "200"], capsys)[0] == 0
    rows = (tmp_path / "limit.csv").read_text().splitlines()
    assert rows[0] == "x,probability,time_average" and len(rows) == 6


def test_periods_command(tmp_path, capsys):
    code, out, _ = run(["periods", "--graph", "cycle", "--n", "8", "-o", str(tmp_path / "p.json")], capsys)
    assert code == 0 and json.loads(out)["period"] == 24
    code, out, _ = run(
        ["periods", "--graph", "lattice", "--width", "4", "--height", "4", "--boundary", "torus", "--coin", "dft4", "--init", "sym-dft", "--omega-max", "50", "-o", str(tmp_path / "q.json")],
        capsys,
    )
    assert json.loads(out)["period"] == 16


def test_spectrum_and_period_scan(tmp_path, capsys):
    assert run(["spectrum", "--n", "7", "--coin", "general", "--delta-over-pi", "-0.35714285714285715", "-o", str(tmp_path / "s.json")], capsys)[0] == 0
    spec = json.loads((tmp_path / "s.json").read_text())
    assert len(spec["modes"]) == 7 and spec["degeneracies"]["pairs"]
    code, out, _ = run(["period-scan", "--n-max", "4", "--omega-max", "12", "-o", str(tmp_path / "scan.csv")], capsys)
    assert code == 0
    assert (tmp_path / "scan.csv").read_text().startswith("N,Omega,rho,delta_over_pi,m,rho_free\n")
    assert all(row["period"] == row["expected"] for row in json.loads(out)["table"])


def test_glued_trees_command(tmp_path, capsys):
    code, out, _ = run(["glued-trees", "--n", "4", "--coin", "grover", "--steps", "12", "--every", "4", "-o", str(tmp_path / "g.csv")], capsys)
    assert code == 0
    rows = (tmp_path / "g.csv").read_text().splitlines()
    assert rows[0] == "t,column,probability"
    assert len(rows) == 1 + 4 * 10  # t = 0, 4, 8, 12 over 10 columns
    assert json.loads(out)["depth"] == 4


def test_sweep_command(tmp_path, capsys):
    code, out, _ = run(["sweep", "--coin", "grover4", "--samples", "20", "--steps", "10", "-o", str(tmp_path / "sw.json")], capsys)
    assert code == 0
    res = json.loads(out)
    assert res["max_second"] <= res["exact_max_second"] + 1e-9


@pytest.mark.parametrize(
    "args,field",
    [
        (["walk", "--rho", "1.5", "--coin", "general"], "--rho"),
        (["walk", "--eta", "-0.1"], "--eta"),
        (["walk", "--graph", "cycle"], "--n"),
        (["walk", "--graph", "cycle", "--n", "1"], "--graph"),
        (["walk", "--graph", "line", "--coin", "grover4", "--steps", "3"], "--coin"),
        (["walk", "--graph", "lattice", "--init", "up"], "--init"),
        (["walk", "--graph", "lattice", "--width", "4"], "--width"),
        (["limit", "--n", "4", "--coin", "dft4"], "--coin"),
        (["walk", "--steps", "-1"], "--steps"),
        (["spectrum", "--n", "5", "--delta-over-pi", "0.2"], "--delta-over-pi"),
    ],
)
def test_errors_name_the_field(args, field, tmp_path, capsys):
    code, _, err = run(args + ["-o", str(tmp_path / "x")], capsys)
    assert code == 2
    assert field in err


def test_unknown_config_field(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"command": "walk", "stepz": 3}))
    code, _, err = run(["--config", str(cfg), "walk"], capsys)
    assert code == 2 and "--stepz" in err
