import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from ekrdeg.cli import REPORT_SCHEMA, main, tally
from ekrdeg.families import complete, fano, save_family, star, SetFamily


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    rep = json.loads(out)
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert {k: v for k, v in tally(rep["entries"]).items()} == rep["summary"] or "--summary-only" in argv
    return code, rep, err


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, F in [("fano", fano()), ("full", complete(6, 3)), ("star", star(5, 2, [1])),
                    ("bad", SetFamily.from_sets(7, [[1, 2, 3], [4, 5, 6]]))]:
        paths[name] = str(tmp_path / f"{name}.json")
        save_family(F, paths[name])
    from ekrdeg.families import design_2_6_3_2
    paths["design"] = str(tmp_path / "design.json")
    save_family(design_2_6_3_2(), paths["design"])
    return paths


def test_verify_hahn_all_equality(capsys):
    code, rep, err = run_json(capsys, "verify", "--lemma", "hahn", "--nmax", "40")
    assert code == 0
    assert rep["summary"]["equality"] == rep["summary"]["total"] > 0
    assert "equality=" in err


def test_verify_lemma31(capsys):
    code, rep, _ = run_json(capsys, "verify", "--lemma", "lemma31", "--kmax", "25")
    assert code == 0
    for e in rep["entries"]:
        p = e["params"]
        assert (e["verdict"] == "equality") == (p["n"] == 2 * p["k"] + 1)


def test_verify_all_default(capsys):
    code, rep, _ = run_json(capsys, "verify", "--lemma", "all")
    assert code == 0 and rep["summary"]["fail"] == 0
    assert {e["lemma"] for e in rep["entries"]} >= {"lemma31", "lemma32", "lemma33_routes", "claim1",
                                                   "claim2", "claim3", "hahn", "technical",
                                                   "factorization"}


def test_verify_family_suites(capsys):
    code, rep, _ = run_json(capsys, "verify", "--lemma", "lemma32", "--families", "20", "--seed", "4")
    assert code == 0 and all(e["verdict"] in ("pass", "equality") for e in rep["entries"])
    code, rep, _ = run_json(capsys, "verify", "--lemma", "lemma33", "--families", "20", "--seed", "4")
    assert code == 0 and all(e["verdict"] == "equality" for e in rep["entries"])


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "technical", "--kmax", "6", "--nmax", "20", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and {"lemma", "lhs", "rhs", "slack", "verdict"} <= set(rows[0])


def test_verify_bad_selector(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", "--lemma", "lemma99"])
    assert e.value.code == 2


def test_profile(capsys, files):
    code, rep, _ = run_json(capsys, "profile", files["fano"])
    e = rep["entries"][0]
    assert code == 0 and sum(__import__("fractions").Fraction(x) for x in e["norms"]) == 7
    assert all(e["checks"].values())
    _, rep, _ = run_json(capsys, "profile", files["full"])
    assert rep["entries"][0]["norms"] == ["20", "0", "0", "0"]
    _, rep, _ = run_json(capsys, "profile", files["star"])
    assert rep["entries"][0]["norms"] == ["8/5", "12/5", "0"]


def test_profile_errors(capsys, tmp_path):
    p = tmp_path / "mixed.json"
    p.write_text(json.dumps({"n": 5, "sets": [[1, 2], [1, 2, 3]]}))
    assert run(capsys, "profile", str(p))[0] == 2
    p.write_text("nonsense")
    assert run(capsys, "profile", str(p))[0] == 2
    assert run(capsys, "profile", str(tmp_path / "missing.json"))[0] == 2


def test_check(capsys, files):
    code, rep, _ = run_json(capsys, "check", files["fano"], "--d", "2")
    e = rep["entries"][0]
    assert code == 0 and e["verdict"] == "pass" and e["min_degree"] == 1
    code, rep, _ = run_json(capsys, "check", files["design"], "--d", "2")
    e = rep["entries"][0]
    assert code == 0 and e["verdict"] == "out_of_range" and e["min_degree"] == 2
    assert e["details"]["note"] == "out of theorem range"
    code, rep, _ = run_json(capsys, "check", files["bad"], "--d", "2")
    assert code == 1 and rep["entries"][0]["witness"] == [[1, 2, 3], [4, 5, 6]]


def test_search(capsys, tmp_path):
    out = tmp_path / "w.json"
    code, rep, _ = run_json(capsys, "search", "--n", "6", "--k", "3", "--d", "2", "--target", "2",
                            "--out", str(out))
    assert code == 0 and rep["entries"][0]["status"] == "witness"
    assert len(json.loads(out.read_text())["sets"]) == 10
    code, rep, _ = run_json(capsys, "search", "--n", "7", "--k", "3", "--d", "2", "--target", "2")
    assert code == 0 and rep["entries"][0]["status"] == "exhausted"
    code, rep, _ = run_json(capsys, "search", "--n", "9", "--k", "4", "--d", "2", "--target", "6",
                            "--time-limit", "5")
    assert code == 0 and rep["entries"][0]["status"] in ("witness", "capped")
    code, rep, _ = run_json(capsys, "search", "--n", "9", "--k", "4", "--d", "2", "--target", "7",
                            "--node-limit", "50")
    assert code == 0 and rep["summary"]["capped"] == 1
    assert run(capsys, "search", "--n", "5", "--k", "2", "--d", "2", "--target", "1")[0] == 2


def test_coeffs(capsys):
    code, rep, _ = run_json(capsys, "coeffs", "--n", "7", "--k", "3", "--d", "2")
    cs = rep["entries"][0]
    assert code == 0
    assert cs["a"] == ["5", "-2", "3"] and cs["b"] == ["150", "-32", "3"]
    assert (cs["c"], cs["f"], cs["g"]) == ("1", "60", "210")
    assert [e["lhs"] for e in rep["entries"][1:]] == ["70", "44", "3"]
    assert run(capsys, "coeffs", "--n", "6", "--k", "3", "--d", "2")[0] == 2


def test_scan_theorem_cli(capsys):
    code, rep, _ = run_json(capsys, "scan-theorem")
    assert code == 0 and rep["summary"]["capped"] == 0
    code, out, _ = run(capsys, "scan-theorem", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and {"n", "k", "d", "status"} <= set(rows[0])


def test_chvatal_cli(capsys):
    code, rep, _ = run_json(capsys, "chvatal")
    assert code == 0 and [(e["lhs"], e["rhs"]) for e in rep["entries"]][:2] == [("2", "3"), ("8", "11")]
    assert run(capsys, "chvatal", "--n", "6")[0] == 2


def test_catalog_cli(capsys, tmp_path):
    code, rep, _ = run_json(capsys, "catalog", "fano", "--out", str(tmp_path / "f.json"))
    assert code == 0 and len(rep["entries"][0]["sets"]) == 7
    code, rep, _ = run_json(capsys, "catalog", "star", "--n", "5", "--k", "2", "--centre", "1")
    assert rep["entries"][0]["sets"] == [[1, 2], [1, 3], [1, 4], [1, 5]]
    assert run(capsys, "catalog", "star", "--n", "5")[0] == 2


def test_parallel_matches_serial(capsys, monkeypatch):
    argv = ("verify", "--lemma", "claims", "--kmax", "8", "--nmax", "40")
    _, serial, _ = run_json(capsys, *argv)
    monkeypatch.setenv("EKRDEG_WORKERS", "3")
    _, par, _ = run_json(capsys, *argv)
    assert serial["entries"] == par["entries"] and serial["summary"] == par["summary"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ekrdeg", "coeffs", "--n", "7", "--k", "3", "--d", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    jsonschema.validate(json.loads(res.stdout), REPORT_SCHEMA)
