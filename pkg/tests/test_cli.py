import json
from pathlib import Path

import pytest

from petridiag.cli import parse_events, run_cli

ROOT = Path(__file__).resolve().parent.parent
FIG1 = str(ROOT / "fixtures" / "fig1.net.json")
GOLDEN = Path(__file__).resolve().parent / "golden"


def cli(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_events():
    assert parse_events("A,B,E*3") == ["A", "B", "E", "E", "E"]
    assert parse_events("") == []
    assert parse_events(" A , B ") == ["A", "B"]
    assert parse_events("E*0") == []


@pytest.mark.parametrize(
    "name, argv, exit_code",
    [
        ("explain_multiset_prefixes", ["explain", "--obs", "A,B,D,E", "--multiset", "--prefixes"], 0),
        ("diagnose_exact_ABD", ["diagnose", "--obs", "A,B,D", "--mode", "exact"], 0),
        ("diagnose_efficient_ABDE", ["diagnose", "--obs", "A,B,D,E", "--mode", "efficient"], 0),
        ("precision_bound6", ["precision", "--bound", "6"], 1),
        ("check_fig1", ["check"], 0),
    ],
)
def test_golden_json(capsys, name, argv, exit_code):
    code, out, _ = cli(capsys, *argv, "--net", FIG1, "--format", "json")
    assert code == exit_code
    assert json.loads(out) == json.loads((GOLDEN / f"{name}.json").read_text("utf-8"))
    assert out == (GOLDEN / f"{name}.json").read_text("utf-8")


def test_diagnose_exact_human(capsys):
    code, out, _ = cli(capsys, "diagnose", "--net", FIG1, "--obs", "A,B,D", "--mode", "exact")
    assert code == 0
    assert out.strip().splitlines()[-1] == "final: FAULT_CERTAIN"


def test_diagnose_efficient_human(capsys):
    code, out, _ = cli(capsys, "diagnose", "--net", FIG1, "--obs", "A,B,D,E", "--mode", "efficient")
    assert code == 0
    rows = [l for l in out.splitlines() if l.strip().startswith("o_")]
    assert len(rows) == 5
    assert all("FAULT_POSSIBLE" in r for r in rows[1:])


def test_precision_human_exit_code(capsys):
    code, out, _ = cli(capsys, "precision", "--net", FIG1, "--bound", "6")
    assert code == 1
    assert "detection delay (observable events after the fault): 3" in out


def test_precision_without_witnesses_exits_zero(capsys, tmp_path):
    net = tmp_path / "unique.net.json"
    net.write_text(json.dumps({
        "schema_version": "1",
        "places": [{"name": n} for n in ("p0", "p1", "p2")],
        "transitions": [
            {"name": "f", "pre": ["p0"], "post": ["p1"], "observable": False, "fault": True},
            {"name": "X", "pre": ["p1"], "post": ["p2"], "observable": True, "fault": False},
        ],
        "initial_marking": {"p0": 1},
    }))
    code, out, _ = cli(capsys, "precision", "--net", str(net), "--bound", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["imprecise_witnesses"] == []


def test_malformed_net_exits_two(capsys, tmp_path):
    bad = tmp_path / "bad.net.json"
    bad.write_text("{ not json")
    code, _, err = cli(capsys, "check", "--net", str(bad))
    assert code == 2
    assert "E_SYNTAX" in err


def test_missing_file_exits_two(capsys, tmp_path):
    code, _, _ = cli(capsys, "check", "--net", str(tmp_path / "nope.json"))
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [["frobnicate"], ["diagnose", "--net", FIG1], ["diagnose", "--net", FIG1, "--obs", "A", "--wat"],
     ["diagnose", "--net", FIG1, "--obs", "A", "--mode", "fuzzy"], []],
)
def test_usage_errors_exit_two(capsys, argv):
    code, out, err = cli(capsys, *argv)
    assert code == 2
    assert "usage" in err
    assert out == ""


def test_unknown_or_unobservable_event_exits_two(capsys):
    assert cli(capsys, "diagnose", "--net", FIG1, "--obs", "Q")[0] == 2
    assert cli(capsys, "diagnose", "--net", FIG1, "--obs", "f")[0] == 2


def test_budget_exhaustion_exits_three(capsys):
    code, _, err = cli(capsys, "explain", "--net", FIG1, "--obs", "A,B", "--multiset",
                       "--max-explanations", "1")
    assert code == 3
    assert "max_explanations" in err


def test_explain_multiset_prefixes_human(capsys):
    code, out, _ = cli(capsys, "explain", "--net", "builtin:fig1", "--obs", "A,B,D,E",
                       "--multiset", "--prefixes")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "o_0 = []: []"
    assert lines[2] == "o_2 = [A,B]: [f,A,B]*, [u_1,B,A], [u_2,A,B]"


def test_explain_defaults_to_ordered(capsys):
    code, out, _ = cli(capsys, "explain", "--net", FIG1, "--obs", "A,B", "--format", "json")
    payload = json.loads(out)
    assert payload["semantics"] == "ordered"
    assert payload["results"][0]["explanations"] == [["f", "A", "B"], ["u_2", "A", "B"]]


def test_repetition_shorthand(capsys):
    code, out, _ = cli(capsys, "compare", "--net", FIG1, "--obs", "A,B,D,E*10", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["exact"]["final"] == "FAULT_CERTAIN"
    assert payload["efficient"]["final"] == "FAULT_POSSIBLE"
    assert len(payload["exact"]["observation"]) == 13


def test_simulate(capsys):
    code, out, _ = cli(capsys, "simulate", "--net", FIG1, "--seq", "f,A,B,D", "--format", "json")
    assert code == 0
    assert json.loads(out)["marking"] == {"p0": 1, "p4": 1}
    code, out, _ = cli(capsys, "simulate", "--net", FIG1, "--seq", "A", "--format", "json")
    assert code == 1
    assert json.loads(out)["step"] == 0


def test_project(capsys):
    code, out, _ = cli(capsys, "project", "--net", FIG1, "--seq", "u_1,B,A,D")
    assert (code, out.strip()) == (0, "[B,A,D]")


def test_runs(capsys):
    code, out, _ = cli(capsys, "runs", "--net", FIG1, "--max-len", "1", "--format", "json")
    assert json.loads(out)["runs"] == [[], ["f"], ["u_1"], ["u_2"]]


def test_check_cyclic_net_reports_finding(capsys, tmp_path):
    net = tmp_path / "cyc.net.json"
    net.write_text(json.dumps({
        "schema_version": "1",
        "places": [{"name": "p"}],
        "transitions": [{"name": "t", "pre": ["p"], "post": ["p"],
                         "observable": False, "fault": True}],
        "initial_marking": {"p": 1},
    }))
    code, out, _ = cli(capsys, "check", "--net", str(net), "--format", "json")
    assert code == 1
    assert json.loads(out)["structure"]["cycle"] == ["p", "t", "p"]
    code, _, err = cli(capsys, "diagnose", "--net", str(net), "--obs", "")
    assert code == 2 and "cycle" in err


def test_kernel_info(capsys):
    code, out, _ = cli(capsys, "--kernel-info")
    assert code == 0 and out.strip() in ("python", "cython")
