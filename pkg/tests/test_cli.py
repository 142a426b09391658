import json

import pytest

from vislat.cli import run
from vislat.io import read_points_csv
from vislat.visibility import is_visible


def report(capsys):
    return json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("radius, rows", [(1, 8), (2, 16), (0, 0)])
def test_visible_rows(tmp_path, capsys, radius, rows):
    out = tmp_path / "pts.csv"
    assert run(["visible", "--radius", str(radius), "--output", str(out)]) == 0
    pts = read_points_csv(out.read_text())
    assert len(pts) == rows
    assert report(capsys)["result"]["visibleCount"] == rows


def test_visible_round_trip(tmp_path, capsys):
    out = tmp_path / "pts.csv"
    assert run(["visible", "--radius", "25", "--output", str(out)]) == 0
    pts = read_points_csv(out.read_text())
    assert len(pts) > 0 and all(is_visible(p) for p in pts.tolist())


def test_visible_to_stdout(capsys):
    assert run(["visible", "--radius", "1"]) == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines()[0] == "m1,m2"
    assert len(captured.out.splitlines()) == 9
    assert json.loads(captured.err)["config"]["radius"] == 1


def test_density_report(capsys):
    assert run(["density", "--radius", "500"]) == 0
    est = report(capsys)["result"]["estimate"]
    assert abs(est["empirical"] - 0.6079) < 2e-3


def test_density_curve_report(capsys):
    assert run(["density", "--curve", "8"]) == 0
    curve = report(capsys)["result"]["curve"]
    assert [c["n"] for c in curve] == list(range(2, 9))
    vals = [c["density"] for c in curve]
    assert vals == sorted(vals)


def test_density_dimension_one(capsys):
    assert run(["density", "--dimension", "1", "--radius", "10"]) == 0
    assert report(capsys)["result"]["estimate"]["theoretical"] == 0


def test_bragg_q1(tmp_path, capsys):
    out = tmp_path / "map.csv"
    assert run(["bragg", "--max-denominator", "1", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "p1,q1,p2,q2,a,H"
    assert lines[1:] == ["0,1,0,1,1,0.607927101854027"]


def test_bragg_q4_zero_rows(tmp_path, capsys):
    out = tmp_path / "map.csv"
    assert run(["bragg", "--max-denominator", "4", "--output", str(out)]) == 0
    for line in out.read_text().splitlines()[1:]:
        p1, q1, p2, q2, a, h = line.split(",")
        if "4" in (q1, q2):
            assert float(h) == 0


def test_bragg_json(tmp_path, capsys):
    out = tmp_path / "map.json"
    assert run(["bragg", "--max-denominator", "3", "--output", str(out)]) == 0
    recs = json.loads(out.read_text())
    assert len(recs) == 16 and recs[0]["a"] == 1


def test_bragg_render_deterministic(tmp_path, capsys):
    outs = []
    for i in range(2):
        csv_path, img = tmp_path / f"m{i}.csv", tmp_path / f"m{i}.svg"
        assert run(["bragg", "--max-denominator", "12", "--output", str(csv_path), "--render", str(img)]) == 0
        outs.append((csv_path.read_bytes(), img.read_bytes()))
    assert outs[0] == outs[1]
    assert not list(tmp_path.glob(".*.tmp"))


def test_compare(capsys):
    assert run(["compare", "--k", "1/2,1/2", "--radii", "400"]) == 0
    res = report(capsys)["result"]
    assert res["a"] == 2
    assert res["table"][0]["deviation"] < 0.05


def test_compare_central(capsys):
    assert run(["compare", "--k", "0/1,0/1", "--radii", "100,200,400"]) == 0
    devs = [row["deviation"] for row in report(capsys)["result"]["table"]]
    assert devs[-1] < devs[0]


@pytest.mark.parametrize("k", ["0.5,0.5", "1/2", "x/2,1/2"])
def test_compare_malformed(capsys, k):
    assert run(["compare", "--k", k, "--radii", "10"]) == 2
    assert "error" in capsys.readouterr().err


def test_compare_zero_denominator(capsys):
    assert run(["compare", "--k", "1/0,1/2", "--radii", "10"]) == 4


def test_exit_codes(capsys):
    assert run(["bragg", "--dimension", "1"]) == 4
    assert run(["visible", "--radius", "-3"]) == 2
    assert run(["visible", "--lattice", '{"basis": [[1, 2], [2, 4]]}']) == 4
    assert run(["bragg", "--dimension", "3", "--max-denominator", "60"]) == 3


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"radius": 2, "lattice": {"dimension": 2, "basis": [[1, 0], [0.5, 0.8660254037844386]]}}))
    assert run(["visible", "--config", str(cfg), "--output", str(tmp_path / "p.csv")]) == 0
    rep = report(capsys)
    assert rep["config"]["radius"] == 2
    assert rep["config"]["lattice"]["basis"][1] == [0.5, 0.8660254037844386]
    # flags override the file
    assert run(["visible", "--config", str(cfg), "--radius", "1", "--output", str(tmp_path / "p.csv")]) == 0
    assert report(capsys)["result"]["visibleCount"] == 8


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"radius": 2, "colour": "blue"}))
    assert run(["visible", "--config", str(cfg)]) == 2


def test_config_echo_complete(capsys, tmp_path):
    assert run(["density", "--curve", "4", "--output", str(tmp_path / "d.json")]) == 0
    rep = report(capsys)
    for key in ("lattice", "radius", "max_dimension", "threads", "truncation"):
        assert key in rep["config"]
    assert json.loads((tmp_path / "d.json").read_text()) == rep


@pytest.mark.parametrize("figure", ["points", "density", "bragg"])
def test_render_command(tmp_path, capsys, figure):
    out = tmp_path / f"{figure}.svg"
    assert run(["render", "--figure", figure, "--radius", "10", "--max-denominator", "6", "--output", str(out)]) == 0
    assert out.read_bytes().startswith(b"<?xml")


def test_render_pgm(tmp_path, capsys):
    out = tmp_path / "fig.pgm"
    assert run(["render", "--figure", "bragg", "--image-format", "pgm", "--output", str(out)]) == 0
    assert out.read_bytes().startswith(b"P5\n")


def test_threads_option(capsys):
    assert run(["compare", "--k", "1/3,0/1", "--radii", "50", "--threads", "3"]) == 0
    assert report(capsys)["config"]["threads"] == 3
