import json

import pytest

from polarfol.catalog import as_root_data
from polarfol.cli import main, parse_class, resolve_settings, build_parser
from polarfol.fixtures import complex_line_fixture
from polarfol.io import dumps_subalgebra
from polarfol.polar import close_check


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_decompose(capsys):
    code, rep = report(capsys, "decompose", "--n", "2")
    assert code == 0 and rep["ok"]
    assert rep["result"]["dims"] == [1, 2, 2, 2, 1]
    assert rep["result"]["metric_scale"] == [2, 1]
    code, rep = report(capsys, "decompose", "--n", "4")
    assert rep["result"]["root_space_dims"]["g_a"] == 6


def test_decompose_invalid_rank(capsys):
    code, _, err = run(capsys, "decompose", "--n", "1")
    assert code == 3 and "n must be" in err


def test_example_check_round_trip(tmp_path, capsys):
    path = tmp_path / "s12.json"
    assert main(["example", "--n", "3", "--a", "1", "--b", "2",
                 "--json-out", str(path)]) == 0
    code, rep = report(capsys, "check", str(path))
    v = rep["verdicts"][0]
    assert code == 0 and v["is_polar"]
    assert (v["invariants"]["a"], v["invariants"]["b"]) == (1, 2)


def test_check_s01(tmp_path, capsys):
    code, out, _ = run(capsys, "example", "--n", "2", "--a", "0", "--b", "1")
    path = tmp_path / "s01.json"
    path.write_text(out)
    code, rep = report(capsys, "check", str(path), "--geom")
    v = rep["verdicts"][0]
    assert code == 0
    assert v["is_polar"] and v["cohomogeneity"] == 2
    assert v["invariants"]["label"] == "S_{0,1}"
    assert v["geometry"]["busemann_spread"] < 1e-9


def test_check_complex_line(tmp_path, capsys):
    rd = as_root_data(2)
    h = close_check(rd.ctx, complex_line_fixture(rd))
    path = tmp_path / "cl.json"
    path.write_text(dumps_subalgebra(h))
    code, rep = report(capsys, "check", str(path))
    assert code == 0
    assert rep["verdicts"][0]["failure_reason"] == "NotOrthogonal"


def test_check_truncated(tmp_path, capsys):
    code, out, _ = run(capsys, "example", "--n", "2", "--a", "0", "--b", "1")
    path = tmp_path / "t.json"
    path.write_text(out[:200])
    code, _, err = run(capsys, "check", str(path))
    assert code == 3 and "line" in err and "column" in err


def test_check_t_component_needs_flag(tmp_path, capsys):
    from polarfol.fixtures import valid_t_fixtures
    h = valid_t_fixtures(as_root_data(2))[0]
    path = tmp_path / "t.json"
    path.write_text(dumps_subalgebra(h))
    code, _, err = run(capsys, "check", str(path))
    assert code == 3 and "--conditional-ok" in err
    code, rep = report(capsys, "check", str(path), "--conditional-ok")
    assert code == 0 and rep["verdicts"][0]["conditional"]


def test_congruent(tmp_path, capsys):
    paths = []
    for a, b in ((0, 1), (0, 1), (1, 1)):
        code, out, _ = run(capsys, "example", "--n", "2", "--a", str(a),
                           "--b", str(b))
        p = tmp_path / f"{len(paths)}.json"
        p.write_text(out)
        paths.append(str(p))
    _, rep = report(capsys, "congruent", paths[0], paths[1])
    assert rep["result"]["congruent"] is True
    assert rep["result"]["witness"] is not None
    _, rep = report(capsys, "congruent", paths[0], paths[2])
    assert rep["result"]["congruent"] is False


def test_lemmas(capsys):
    code, rep = report(capsys, "lemmas", "--n", "2", "--trials", "10")
    assert code == 0 and all(r["passed"] for r in
                             rep["result"]["identities"])


def test_survey_deterministic(capsys):
    args = ("survey", "--n", "2", "--trials", "12", "--seed", "42")
    code, a = report(capsys, *args)
    _, b = report(capsys, *args)
    assert code == 0
    a.pop("timing"), b.pop("timing")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["seed"] == 42


def test_geom(capsys, tmp_path):
    csv_path = tmp_path / "g.csv"
    code, rep = report(capsys, "geom", "--n", "2", "--class", "S_{1,1}",
                       "--samples", "5", "--csv-out", str(csv_path))
    assert code == 0 and len(rep["verdicts"]) == 1
    assert rep["verdicts"][0]["geometry"]["busemann_spread"] > 1e-3
    assert csv_path.read_text().startswith("class_id,index")


def test_geom_bad_class(capsys):
    code, _, _ = run(capsys, "geom", "--n", "2", "--class", "0,5")
    assert code == 3
    code, _, _ = run(capsys, "geom", "--n", "2", "--class", "xyz")
    assert code == 3


def test_parse_class():
    assert parse_class("0,1", 3).label == "S_{0,1}"
    assert parse_class("S_{1,2}", 3).label == "S_{1,2}"
    assert parse_class("points", 3).kind == "points"
    assert parse_class("all", 3) is None


def test_settings_precedence(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"seed": 1, "tolerance": 0.5, "trials": 7}))
    p = build_parser()
    ns = p.parse_args(["survey", "--n", "2", "--config", str(cfg)])
    assert resolve_settings(ns, {})["seed"] == 1
    assert resolve_settings(ns, {})["trials"] == 7
    env = {"POLARFOL_SEED": "2", "POLARFOL_TOL": "0.25"}
    s = resolve_settings(ns, env)
    assert (s["seed"], s["tolerance"]) == (2, 0.25)
    ns = p.parse_args(["survey", "--n", "2", "--config", str(cfg),
                       "--seed", "3", "--tolerance", "0.125"])
    s = resolve_settings(ns, env)
    assert (s["seed"], s["tolerance"]) == (3, 0.125)


def test_bad_env(capsys, monkeypatch):
    monkeypatch.setenv("POLARFOL_SEED", "abc")
    code, _, err = run(capsys, "lemmas", "--n", "2")
    assert code == 3 and "POLARFOL_SEED" in err


def test_json_out(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["decompose", "--n", "3", "--json-out", str(out)]) == 0
    assert json.loads(out.read_text())["command"]["name"] == "decompose"


def test_survey_full_example(capsys):
    code, rep = report(capsys, "survey", "--n", "2", "--trials", "500",
                       "--seed", "42")
    assert code == 0 and rep["violations"] == []
    assert rep["result"]["catalog_size"] == 5


def test_violation_exit_code(capsys, monkeypatch):
    import polarfol.cli as cli
    monkeypatch.setattr(cli, "verify_structure",
                        lambda rd, trials, seed: ["[B,Z] != Z"])
    code, out, err = run(capsys, "decompose", "--n", "2")
    assert code == 2 and "violation" in err
    assert json.loads(out)["ok"] is False
