import json

import pytest

from tubix.cli import run
from tubix.graph import generate_family, parse_graph


@pytest.fixture
def graph_file(tmp_path):
    def make(kind, n):
        p = tmp_path / f"{kind}{n}.json"
        p.write_text(generate_family(kind, n).to_json())
        return str(p)
    return make


def _run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        import sys
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_family_round_trip(capsys):
    code, out, _ = _run(capsys, ["family", "cycle", "5"])
    assert code == 0
    assert parse_graph(out).to_json() + "\n" == out


def test_family_error(capsys):
    code, _, err = _run(capsys, ["family", "cycle", "2"])
    assert code == 64 and "cycle" in err


def test_realize_pipeline(capsys, monkeypatch):
    code, out, _ = _run(capsys, ["realize", "--scheme", "power3"],
                        stdin=generate_family("path", 3).to_json(), monkeypatch=monkeypatch)
    assert code == 0
    data = json.loads(out)
    assert data["total"] == "3" and data["scheme"] == "power3"
    assert {tuple(v["point"]) for v in data["vertices"]} == {
        ("0", "3", "0"), ("0", "1", "2"), ("1", "0", "2"), ("2", "0", "1"), ("2", "1", "0")}


def test_tubings_count(capsys, graph_file):
    code, out, _ = _run(capsys, ["tubings", graph_file("complete", 3), "--max-only", "--count"])
    assert (code, out) == (0, "6\n")
    code, out, _ = _run(capsys, ["tubings", graph_file("complete", 3), "--max-only", "--output", "text"])
    assert len(out.splitlines()) == 6
    code, out, _ = _run(capsys, ["tubings", graph_file("path", 3), "-k", "1"])
    assert json.loads(out)["count"] == 5


def test_tubes_and_fvector(capsys, graph_file):
    code, out, _ = _run(capsys, ["tubes", graph_file("path", 3)])
    assert json.loads(out)["tubes"] == [[0], [1], [2], [0, 1], [1, 2]]
    code, out, _ = _run(capsys, ["fvector", graph_file("complete", 4), "--output", "text"])
    assert out == "14 36 24\n"
    code, out, _ = _run(capsys, ["tubes", graph_file("path", 3), "--output", "csv"])
    assert out.splitlines()[0] == "size,nodes"


def test_hrep(capsys, graph_file):
    code, out, _ = _run(capsys, ["hrep", graph_file("path", 3), "--output", "text"])
    assert out.splitlines() == ["x0 + x1 + x2 = 3", "x0 >= 0", "x1 >= 0", "x2 >= 0",
                                "x0 + x1 >= 1", "x1 + x2 >= 1"]
    code, out, _ = _run(capsys, ["hrep", graph_file("path", 3)])
    assert json.loads(out)["equality"] == {"support": [0, 1, 2], "rhs": "3"}


def test_verify_exit_codes(capsys, graph_file):
    code, out, _ = _run(capsys, ["verify", graph_file("cycle", 4)])
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    code, out, _ = _run(capsys, ["verify", graph_file("cycle", 4), "--scheme", "loday"])
    assert code == 1 and json.loads(out)["verdict"] == "fail"
    code, out, _ = _run(capsys, ["verify", graph_file("cycle", 4), "--oracle-cap", "5"])
    assert code == 2
    assert {c["name"]: c["status"] for c in json.loads(out)["checks"]}["oracle"] == "skipped"


def test_custom_scheme(capsys, graph_file, tmp_path):
    w = tmp_path / "w.json"
    w.write_text('["0", "1", "3"]')
    code, out, _ = _run(capsys, ["realize", graph_file("path", 3), "--scheme", f"custom:{w}"])
    assert code == 0 and json.loads(out)["scheme"] == f"custom:{w}"
    w.write_text('["0", "1"]')
    code, _, err = _run(capsys, ["realize", graph_file("path", 3), "--scheme", f"custom:{w}"])
    assert code == 64
    code, _, _ = _run(capsys, ["realize", graph_file("path", 3), "--scheme", "custom:/nope.json"])
    assert code == 74


def test_usage_and_io_errors(capsys, tmp_path):
    assert _run(capsys, ["frobnicate"])[0] == 64
    assert _run(capsys, ["tubes", str(tmp_path / "missing.json")])[0] == 74
    bad = tmp_path / "bad.json"
    bad.write_text('{"n":2,"edges":[[0,0]]}')
    assert _run(capsys, ["tubes", str(bad)])[0] == 64
    big = tmp_path / "big.json"
    big.write_text(generate_family("path", 13).to_json())
    assert _run(capsys, ["tubes", str(big)])[0] == 64
    assert _run(capsys, ["tubes", str(big), "--max-n", "13"])[0] == 0


def test_output_file(capsys, graph_file, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = _run(capsys, ["fvector", graph_file("path", 4), "-o", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["f_vector"] == [9, 21, 14]


def test_survey_lists_each_graph_once(capsys):
    code, out, err = _run(capsys, ["survey", "--n", "3"])
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(lines) == 8
    assert len({json.dumps(x["graph"]) for x in lines}) == 8
    assert all(x["verdict"] == "pass" for x in lines)
    code, out, _ = _run(capsys, ["survey", "--n", "4", "--connected-only", "--output", "text"])
    assert len(out.splitlines()) == 38


def test_survey_with_jobs_keeps_order(capsys):
    _, serial, _ = _run(capsys, ["survey", "--n", "3", "--output", "text"])
    _, parallel, _ = _run(capsys, ["survey", "--n", "3", "--output", "text", "--jobs", "2"])
    assert serial == parallel


def test_survey_reports_loday_witness(capsys):
    code, out, err = _run(capsys, ["survey", "--n", "4", "--up-to", "--connected-only",
                                   "--scheme", "loday", "--stop-on-fail", "--output", "text"])
    assert code == 1
    assert out.splitlines()[-1].startswith("fail")
    assert "first failure" in err and "check" in err


def test_export_off(capsys, graph_file):
    code, out, _ = _run(capsys, ["export-off", graph_file("complete", 4)])
    assert code == 0 and out.splitlines()[1].startswith("24 14")
    code, _, _ = _run(capsys, ["export-off", graph_file("path", 3)])
    assert code == 64


def test_deterministic(capsys, graph_file):
    a = _run(capsys, ["realize", graph_file("cycle", 5)])[1]
    b = _run(capsys, ["realize", graph_file("cycle", 5)])[1]
    assert a == b
