import json

import pytest

from deltashock.cli import emit, main, parse_scenario, scenario_to_dict
from deltashock.core import State
from deltashock.interact import fan_solution


@pytest.fixture
def case1_file(tmp_path):
    p = tmp_path / "case1.json"
    json.dump({"states": [[6, 1], [3, 1], [0, 1]], "offset": -1.0,
               "t_max": 2.0, "grid": [41, 21]}, p.open("w"))
    return p


def test_parse_scenario(case1_file):
    sc, opts = parse_scenario(case1_file)
    assert sc.left == State(6, 1)
    assert sc.t_max == 2.0
    assert opts["grid"] == (41, 21)
    assert opts["window"] is None


def test_parse_round_trip(case1_file, tmp_path):
    sc, _ = parse_scenario(case1_file)
    p2 = tmp_path / "round.json"
    json.dump(scenario_to_dict(sc), p2.open("w"))
    sc2, _ = parse_scenario(p2)
    assert sc2 == sc


def test_invalid_scenario_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    json.dump({"states": [[3, 1], [3, 1], [0, 1]], "offset": -1.0}, p.open("w"))
    assert main(["solve", str(p), "--out", str(tmp_path / "o")]) == 2
    assert "u0 >= u1 + 2 violated" in capsys.readouterr().err


def test_missing_file_exits_2(tmp_path):
    assert main(["solve", str(tmp_path / "nope.json")]) == 2


def test_solve_writes_outputs(case1_file, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["solve", str(case1_file), "--out", str(out), "--svg"]) == 0
    for name in ("events.json", "fronts.csv", "u.csv", "v.csv", "atoms.csv",
                 "diagram.svg"):
        assert (out / name).exists()
    doc = json.loads((out / "events.json").read_text())
    assert doc["case"] == 1
    (ev,) = doc["events"]
    assert ev["rule"] == "MergeDeltas"
    assert ev["t"] == pytest.approx(1 / 3)
    assert ev["x"] == pytest.approx(0.5)
    svg = (out / "diagram.svg").read_text()
    assert "<svg" in svg and "polyline" in svg


def test_emit_without_atoms_writes_header_only(tmp_path):
    sol = fan_solution(State(3, 1), State(2, 1), t_max=2.0)
    emit(sol, tmp_path / "o", nx=11, nt=5, window=(-5.0, 5.0), svg=False)
    rows = (tmp_path / "o" / "atoms.csv").read_text().strip().splitlines()
    assert rows == ["t,front_id,x,alpha,alpha0,alpha1"]


def test_riemann_subcommand(capsys):
    assert main(["riemann", "--left", "3,1", "--right", "2,1",
                 "--atom", "5"]) == 0
    out = capsys.readouterr().out
    assert "delta contact" in out and "shock" in out
    assert "strength 5" in out
    assert main(["riemann", "--left", "bogus", "--right", "2,1"]) == 2


def test_verify_subcommand(case1_file, capsys):
    assert main(["verify", str(case1_file), "--tests", "20",
                 "--seed", "5"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 3


def test_oracle_subcommand(tmp_path, capsys):
    p = tmp_path / "c4.json"
    json.dump({"states": [[4, 1], [1, 1], [1.5, 1]], "offset": -1.0},
              p.open("w"))
    assert main(["oracle", str(p), "--n", "80"]) == 0
    assert "trajectory sup error" in capsys.readouterr().out


def test_solve_outputs_deterministic(case1_file, tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    main(["solve", str(case1_file), "--out", str(out1), "--svg"])
    main(["solve", str(case1_file), "--out", str(out2), "--svg"])
    for name in ("events.json", "fronts.csv", "u.csv", "v.csv", "atoms.csv",
                 "diagram.svg"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
