import io
import json

import pytest

from hexalink.cli import run
from hexalink.generate import example1
from hexalink.io import dumps_linkage, loads_linkage


def call(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_example1_classify(monkeypatch):
    code, text, _ = call(["example1"])
    assert code == 0
    code, out, _ = call(["classify", "-"], stdin=text, monkeypatch=monkeypatch)
    doc = json.loads(out)
    assert code == 0 and doc["rank"] == 3 and doc["family"] == "ParallelProperty"


def test_generate_linesym_rank(monkeypatch):
    code, text, _ = call(["generate", "linesym", "--seed", "7"])
    assert code == 0
    code, out, _ = call(["rank", "--mode", "exact"], stdin=text, monkeypatch=monkeypatch)
    assert code == 0 and out.strip() == "2"


def test_generate_deterministic():
    for fam in ("parallel", "linesym", "cubic"):
        assert call(["generate", fam, "--seed", "3"])[1] == call(["generate", fam, "--seed", "3"])[1]


def test_generate_cubic_pairs_roundtrip(tmp_path):
    code, text, _ = call(["generate", "cubic", "--seed", "1", "--pairs", "0,1;1,2;-1,3"])
    assert code == 0
    f = tmp_path / "c.json"
    f.write_text(text)
    code, out, _ = call(["classify", str(f)])
    doc = json.loads(out)
    assert doc["family"] == "CubicPolynomialType"
    assert doc["data"]["pairs"] == [["0", "1"], ["1", "2"], ["-1", "3"]]
    assert loads_linkage(text).exact


def test_non_unit_direction_exit4(tmp_path):
    doc = json.loads(dumps_linkage(example1()))
    doc["joints"][0]["primal"] = ["0", "2", "0"]
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    code, _, err = call(["classify", str(f)])
    assert code == 4
    diag = json.loads(err)
    assert diag["error"] == "invariant" and "unit" in diag["message"]


def test_malformed_json_exit3(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    code, _, err = call(["classify", str(f)])
    assert code == 3 and len(err.strip().splitlines()) == 1
    code, _, _ = call(["classify", str(tmp_path / "missing.json")])
    assert code == 3


def test_undetermined_exit2(tmp_path):
    import random

    from hexalink.generate import random_line
    from hexalink.linkage import Linkage

    rng = random.Random(9)
    f = tmp_path / "g.json"
    f.write_text(dumps_linkage(Linkage([random_line(rng) for _ in range(6)])))
    code, out, _ = call(["classify", str(f)])
    assert code == 2 and json.loads(out)["family"] == "Undetermined"


def test_trace_and_poses(tmp_path):
    lf = tmp_path / "ex1.json"
    lf.write_text(dumps_linkage(example1()))
    code, out, _ = call(["trace", str(lf), "--grid=-2:3:6"])
    assert code == 0
    cfgs = json.loads(out)["configurations"]
    assert [-2.5, -2.0, -2.0] in cfgs and [1.25, 1.0, 1.0] in cfgs
    cf = tmp_path / "cfg.json"
    cf.write_text(out)
    pf = tmp_path / "poses.txt"
    code, _, _ = call(["poses", str(lf), "--configs", str(cf), "-o", str(pf)])
    lines = pf.read_text().splitlines()
    assert code == 0 and lines[0] == "# hexalink poses v1"
    assert len(lines) == 1 + 7 * len(cfgs)


def test_trace_numeric_failure(tmp_path):
    lf = tmp_path / "ex1.json"
    lf.write_text(dumps_linkage(example1()))
    cf = tmp_path / "cfg.json"
    cf.write_text('{"configurations": [["1", "1", "1"]]}')
    code, _, err = call(["poses", str(lf), "--configs", str(cf)])
    assert code == 5 and json.loads(err)["error"] == "numeric"


def test_rank_csv_and_tol(tmp_path):
    lf = tmp_path / "ex1.json"
    lf.write_text(dumps_linkage(example1()))
    csvf = tmp_path / "m.csv"
    code, out, _ = call(["rank", str(lf), "--csv", str(csvf)])
    assert code == 0 and out.strip() == "3"
    assert len(csvf.read_text().splitlines()) == 48
    code, out, err = call(["rank", str(lf), "--mode", "tol"])
    assert out.strip() == "3" and "warning" in err


def test_scalar_override(tmp_path, monkeypatch):
    lf = tmp_path / "ex1.json"
    lf.write_text(dumps_linkage(example1()))
    monkeypatch.setenv("HEXALINK_SCALAR", "float")
    code, out, _ = call(["classify", str(lf)])
    doc = json.loads(out)
    assert code == 0 and doc["data"]["notes"]


def test_bad_grid(tmp_path):
    lf = tmp_path / "ex1.json"
    lf.write_text(dumps_linkage(example1()))
    code, _, _ = call(["trace", str(lf), "--grid", "1:2"])
    assert code == 3
