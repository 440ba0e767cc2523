import io
import json

import pytest

from cofilling.cli import main


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_nested(capsys):
    code, out, _ = run(capsys, ["bounds", "nested", "--d", "3", "--phi", "phi1,basic,basic"])
    assert code == 0 and out.strip() == "0.0625"


def test_prop9(capsys):
    code, out, _ = run(capsys, ["pagoda", "prop9"])
    obj = json.loads(out)
    assert code == 0 and obj["c3_bound"] > 0.06332 and obj["eps0"] > 0.00082


def test_coboundary_stdin(capsys, monkeypatch):
    code, out, _ = run(capsys, ["coboundary"], '{"n":5,"arity":2,"sets":[[2,4],[2,5]]}', monkeypatch)
    assert code == 0
    assert sorted(map(tuple, json.loads(out)["sets"])) == [(1, 2, 4), (1, 2, 5), (2, 3, 4), (2, 3, 5)]


def test_verify_all(capsys):
    code, out, _ = run(capsys, ["verify-all"])
    assert code == 0 and out.strip().splitlines()[-1].startswith("PASS all")


def test_verify_all_failure_exit(capsys):
    code, out, err = run(capsys, ["--tolerance", "1e-12", "verify-all"])
    assert code == 2 and "FAIL" in out and json.loads(err)["error"] == "verification_failed"


def test_bad_input(capsys, monkeypatch):
    code, _, err = run(capsys, ["fill"], '{"n":5,"arity":2,"sets":[[2,4]]}', monkeypatch)
    assert code == 4 and json.loads(err)["message"] == "input is not a coboundary"
    code, _, err = run(capsys, ["coboundary"], "not json", monkeypatch)
    assert code == 4
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 4


def test_budget_exit(capsys):
    code, out, err = run(capsys, ["profile", "--n", "8", "--d", "2", "--budget", "1000"])
    assert code == 3 and out.startswith("n,d,") and json.loads(err)["error"] == "budget_exceeded"


def test_profile_csv(capsys):
    code, out, _ = run(capsys, ["profile", "--n", "5", "--d", "2"])
    assert code == 0 and out.splitlines()[2].startswith("5,2,1,3,")


def test_fill_and_minimal(capsys, monkeypatch):
    f = '{"n":5,"arity":3,"sets":[[1,2,3],[1,2,4],[1,2,5]]}'
    code, out, _ = run(capsys, ["fill"], f, monkeypatch)
    assert code == 0 and json.loads(out)["filling"]["sets"] == [[1, 2]]
    code, out, _ = run(capsys, ["minimal"], '{"n":4,"arity":2,"sets":[[1,3],[1,4],[2,3],[2,4]]}', monkeypatch)
    assert json.loads(out)["minimal"] is False


def test_certify_and_construct(capsys, tmp_path):
    code, out, _ = run(capsys, ["construct", "multipartite", "--n", "8", "--d", "3", "--parts", "2,2,2,2"])
    e = json.loads(out)["E"]
    path = tmp_path / "e.json"
    path.write_text(json.dumps(e))
    code, out, _ = run(capsys, ["certify", "highdeg", str(path), "--beta", "1/4"])
    assert code == 0 and json.loads(out)["holds"]
    code, out, _ = run(capsys, ["certify", "lemma8", "--extremal", "16"])
    assert code == 0 and json.loads(out)["attains"]


def test_depth_and_manifest(capsys, tmp_path):
    m = tmp_path / "m.json"
    code, out, _ = run(capsys, ["depth", "--fig1", "--manifest", str(m)])
    assert code == 0 and json.loads(out)["depth"] >= 4
    man = json.loads(m.read_text())
    assert man["command"] == "depth" and man["seed"] == 0 and len(man["output_sha256"]) == 64


def test_search_same_bytes_any_threads(capsys):
    argv = ["--budget", "40", "pagoda", "search", "--seeds", "2"]
    _, a, _ = run(capsys, argv)
    _, b, _ = run(capsys, ["--threads", "2"] + argv)
    assert a == b


def test_bounds_curve(capsys):
    code, out, _ = run(capsys, ["bounds", "curve", "--bound", "thm5", "--points", "3"])
    assert out.splitlines() == ["alpha,value", "0,0", "0.125,0.109834957055", "0.25,0"]


def test_pagoda_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, ["pagoda", "quadripartite", "--n", "8"])
    path = tmp_path / "p.json"
    path.write_text(out)
    code, out, _ = run(capsys, ["pagoda", "verify", str(path)])
    assert code == 0 and json.loads(out)["passes"]
