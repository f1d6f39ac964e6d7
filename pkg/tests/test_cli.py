import json
from pathlib import Path

import jsonschema
import pytest

from subspace_graph.cli import main, parse_range
from subspace_graph.graph import read_cache

SCHEMA = json.loads((Path(__file__).parents[1] / "src/subspace_graph/report.schema.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


@pytest.mark.parametrize("n,p,v,e", [(3, 2, 14, 42), (4, 2, 65, 1155), (2, 3, 4, 0)])
def test_build(tmp_path, capsys, n, p, v, e):
    cache = tmp_path / "g.qigr"
    code, out = run(capsys, "build", "-n", n, "-p", p, "--cache", cache)
    assert code == 0
    g = read_cache(cache)
    assert (g.order, g.edge_count()) == (v, e)
    assert f"{v} vertices" in out.out


def test_verify_32(tmp_path, capsys):
    code, out = run(capsys, "verify", "-n", 3, "-p", 2, "--json", tmp_path / "r.json")
    assert code == 0
    report = json.loads((tmp_path / "r.json").read_text())
    jsonschema.validate(report, SCHEMA)
    rows = {r["name"]: r for r in report["invariants"]}
    assert {k: rows[k]["solver"]["value"] for k in rows} == {"omega": 7, "chi": 7, "gamma": 3, "alpha": 7}
    assert all(r["verdict"] == "match" for r in rows.values())
    assert "overall: ok" in out.out


def test_verify_42(tmp_path, capsys):
    code, _ = run(capsys, "verify", "-n", 4, "-p", 2, "--json", tmp_path / "r.json")
    assert code == 0
    report = json.loads((tmp_path / "r.json").read_text())
    jsonschema.validate(report, SCHEMA)
    rows = {r["name"]: r for r in report["invariants"]}
    assert rows["gamma"]["verdict"] == rows["alpha"]["verdict"] == "match"
    assert rows["omega"]["verdict"] == "within-bounds"
    assert 22 <= rows["omega"]["solver"]["value"] <= 33


def test_verify_n2_edge_case(tmp_path, capsys):
    code, _ = run(capsys, "verify", "-n", 2, "-p", 2, "--json", tmp_path / "r.json")
    assert code == 0
    report = json.loads((tmp_path / "r.json").read_text())
    jsonschema.validate(report, SCHEMA)
    assert report["edge_case"] is True
    conn = next(c for c in report["checks"] if c["name"] == "connectivity")
    assert conn["observed"] is False and conn["verdict"] == "match"
    assert {r["name"]: r["verdict"] for r in report["invariants"]}["omega"] == "skipped"


def test_verify_prime_power(tmp_path, capsys):
    code, _ = run(capsys, "verify", "-n", 3, "-q", 4, "--json", tmp_path / "r.json")
    assert code == 0
    report = json.loads((tmp_path / "r.json").read_text())
    assert report["instance"]["modulus"] == [1, 1, 1]


def test_verify_report_deterministic(tmp_path, capsys):
    docs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        run(capsys, "verify", "-n", 3, "-p", 2, "--json", path)
        doc = json.loads(path.read_text())
        doc.pop("timing")
        docs.append(json.dumps(doc, sort_keys=False, ensure_ascii=False))
    assert docs[0] == docs[1]


def test_verify_mismatch_exit_code(tmp_path, capsys, monkeypatch):
    from subspace_graph import counting, report

    real = counting.predicted_invariants

    def wrong(n, q):
        p = real(n, q)
        return counting.PredictedInvariants(**{**p.as_dict(), "gamma": p.gamma + 1})

    monkeypatch.setattr(report, "predicted_invariants", wrong)
    code, out = run(capsys, "verify", "-n", 3, "-p", 2)
    assert code == 1
    assert "MISMATCH" in out.out


def test_invariant(capsys):
    code, out = run(capsys, "invariant", "domination", "-n", 3, "-p", 3)
    assert code == 0 and out.out.startswith("domination: 4 (proven")
    code, out = run(capsys, "invariant", "independence", "-n", 4, "-p", 2)
    assert out.out.startswith("independence: 15 ")
    code, out = run(capsys, "invariant", "clique", "-n", 3, "-p", 2)
    assert out.out.startswith("clique: 7 ")


def test_invariant_unknown_name(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["invariant", "girth", "-n", "3", "-p", "2"])
    assert exc.value.code == 2


def test_invariant_uses_cache(tmp_path, capsys):
    cache = tmp_path / "g.qigr"
    run(capsys, "build", "-n", 3, "-p", 2, "--cache", cache)
    code, out = run(capsys, "invariant", "chromatic", "-n", 3, "-p", 2, "--cache", cache, "--json", tmp_path / "c.json")
    assert code == 0 and out.out.startswith("chromatic: 7 ")
    assert json.loads((tmp_path / "c.json").read_text())["value"] == 7
    code, _ = run(capsys, "invariant", "clique", "-n", 4, "-p", 2, "--cache", cache)
    assert code == 2


def test_census(tmp_path, capsys):
    out_file = tmp_path / "census.jsonl"
    code, out = run(capsys, "census", "--n-range", "4", "--q-set", "2", "--out", out_file, "--budget", 30)
    assert code == 0
    rows = [json.loads(line) for line in out_file.read_text().splitlines()]
    assert len(rows) == 1
    assert rows[0]["lo"] == 22 and rows[0]["hi"] == 33
    assert rows[0]["status"] == "proven" and 22 <= rows[0]["omega"] <= 33
    run(capsys, "census", "--n-range", "4", "--q-set", "2", "--out", out_file, "--budget", 30)
    assert len(out_file.read_text().splitlines()) == 2


def test_census_empty_range(tmp_path, capsys):
    out_file = tmp_path / "census.jsonl"
    code, out = run(capsys, "census", "--n-range", "3-3", "--out", out_file)
    assert code == 0
    assert not out_file.exists()
    assert len(out.out.strip().splitlines()) == 1  # header only


def test_census_over_cap(tmp_path, capsys):
    code, out = run(capsys, "census", "--n-range", "6", "--q-set", "2", "--max-vertices", 100, "--out", tmp_path / "c.jsonl")
    assert code == 0 and "skipped" in out.out


def test_export(tmp_path, capsys):
    code, _ = run(capsys, "export", "-n", 2, "-p", 2, "--dot", tmp_path / "g.dot", "--json", tmp_path / "g.json")
    assert code == 0
    dot = (tmp_path / "g.dot").read_text()
    assert dot.count("[label=") == 3 and " -- " not in dot
    assert json.loads((tmp_path / "g.json").read_text())["vertex_count"] == 3


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "build", "-n", 3, "-p", 4)[0] == 2
    assert run(capsys, "build", "-n", 3)[0] == 2
    assert run(capsys, "build", "-n", 3, "-q", 4, "-p", 3)[0] == 2
    assert run(capsys, "build", "-n", 3, "-p", 2, "-e", 2, "--modulus", "1,0,1")[0] == 2
    assert run(capsys, "build", "-n", 5, "-p", 2, "--max-vertices", 100, "--cache", tmp_path / "x")[0] == 3


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"field": {"p": 2, "e": 2, "modulus": "1,1,1"}, "graph": {"n": 2}}))
    code, out = run(capsys, "build", "--config", cfg, "--cache", tmp_path / "g.qigr")
    assert code == 0 and "5 vertices" in out.out


def test_parse_range():
    assert parse_range("4-8") == [4, 5, 6, 7, 8]
    assert parse_range("4..6") == [4, 5, 6]
    assert parse_range("6") == [6]
