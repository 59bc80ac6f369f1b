import io
import json
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from stratalg.cli import main, parse_caps, parse_order
from stratalg.errors import InadmissibleRelation, ParseError
from stratalg.generators import random_presentation
from stratalg.io import (FIXTURE_NAMES, AlgebraDescription, fixture, fixture_text, from_document, load, parse_text,
                         serialize)
from stratalg.linalg import QQ
from stratalg.report import SCHEMA_VERSION, AnalysisReport, build_report


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def doc(**over):
    d = {"field": "Q", "vertices": ["x", "y"], "arrows": [{"name": "a", "from": "x", "to": "y"}], "relations": []}
    d.update(over)
    return d


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_round_trip(name):
    d = fixture(name)
    assert serialize(d) == fixture_text(name)
    assert parse_text(serialize(d)) == d


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_round_trip(seed):
    q, rels = random_presentation(random.Random(seed))
    d = AlgebraDescription(q, rels, QQ, f"r{seed}")
    assert parse_text(serialize(d)) == d


def test_parse_error_locations():
    with pytest.raises(ParseError) as e:
        parse_text('{"vertices": ["x",]}', "bad.json")
    assert e.value.location.startswith("bad.json:1:")
    with pytest.raises(ParseError) as e:
        from_document(doc(arrows=[{"name": "a", "from": "x", "to": "q"}]))
    assert e.value.location == "$.arrows[0].to"
    with pytest.raises(ParseError) as e:
        from_document(doc(relations=[[["1", ["b"]]]]))
    assert e.value.location == "$.relations[0][0][1]"
    with pytest.raises(ParseError):
        from_document(doc(colour="red"))
    with pytest.raises(ParseError):
        from_document(doc(field={"kind": "prime-field", "characteristic": 4}))
    with pytest.raises(ParseError):
        from_document(doc(relations=[[["one", ["a"]]]]))


def test_inadmissible_relations():
    loops = doc(arrows=[{"name": "a", "from": "x", "to": "y"}, {"name": "b", "from": "y", "to": "x"}])
    with pytest.raises(InadmissibleRelation):
        from_document({**loops, "relations": [[["1", ["b", "a"]], ["1", ["a", "b"]]]]})
    with pytest.raises(InadmissibleRelation):
        from_document({**loops, "relations": [[["1", []]]]})
    with pytest.raises(InadmissibleRelation):
        from_document({**loops, "relations": [[["0", ["b", "a"]]]]})
    with pytest.raises(InadmissibleRelation):
        parse_text(json.dumps({**loops, "relations": [[["0", ["b", "a"]]]]}), "r.json")


def test_load(tmp_path):
    assert load("fixtures/s4_2") == load("s4_2") == fixture("s4_2")
    p = tmp_path / "a.json"
    p.write_text(json.dumps(doc()), encoding="utf-8")
    assert load(str(p)).build().dim == 3
    with pytest.raises(ParseError):
        load(str(tmp_path / "missing.json"))


def test_cli_helpers():
    assert parse_order("y, x ,z") == ("y", "x", "z")
    assert parse_caps("x=1,y=2") == {"x": 1, "y": 2}
    with pytest.raises(ParseError):
        parse_caps("x:1")


@pytest.mark.parametrize("argv", [
    ["basis", "ex1_10"],
    ["projectives", "ex1_10"],
    ["projectives", "ex1_10", "--right"],
    ["stratify", "s4_4", "--order", "x,z,y", "--proper", "--qh"],
    ["all-orders", "s4_3", "--properly"],
    ["check-theorem1", "s4_6"],
    ["orders-algorithm", "s4_2"],
    ["graded", "ex1_10"],
    ["cokernel-closure", "s4_5", "--prime", "3"],
    ["cokernel-closure", "hereditary_a2", "--order", "y,x"],
    ["cokernel-closure", "s4_5", "--order", "x,y,z", "--samples", "3"],
    ["basis", "s4_2", "--field-prime", "3"],
])
def test_cli_commands_succeed(argv):
    code, out = run(*argv)
    assert code == 0 and out


def test_cli_outputs():
    assert "dim A = 8" in run("basis", "ex1_10")[1]
    assert "right P_z: dim 4" in run("projectives", "ex1_10", "--right")[1]
    out = run("stratify", "s4_6", "--order", "x,z,y")[1]
    assert "standardly stratified: True" in out and "x:2 y:2 z:1" in out
    out = run("orders-algorithm", "s4_4")[1]
    assert "L (1):" in out and "y > x > z" in out
    out = run("cokernel-closure", "s4_5")[1]
    assert "closed = False" in out and "x:1 y:2 z:0" in out
    out = run("cokernel-closure", "s4_6", "--prime", "3")[1]
    assert "no-counterexample-up-to-bound" in out and "not a proof" in out


@pytest.mark.parametrize("argv,code", [
    (["basis", "no_such_algebra"], 2),
    (["basis", "ex1_10", "--field-prime", "4"], 2),
    (["cokernel-closure", "s4_5", "--caps", "x:1"], 2),
    (["stratify", "ex1_10", "--order", "x,y"], 4),
    (["graded", "s4_6"], 4),
    (["cokernel-closure", "s4_4", "--order", "z,y,x"], 4),
    (["cokernel-closure", "s4_2", "--budget", "2"], 3),
])
def test_cli_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_graded_dot(tmp_path):
    p = tmp_path / "q.dot"
    assert run("graded", "ex1_10", "--dot", str(p))[0] == 0
    assert p.read_text(encoding="utf-8").startswith("digraph")


def test_report_stable_and_round_trips(tmp_path):
    a = build_report(fixture("s4_4")).to_json()
    b = build_report(fixture("s4_4")).to_json()
    assert a == b
    rep = AnalysisReport.from_json(a)
    assert rep.to_json() == a
    assert rep.schema_version == SCHEMA_VERSION
    assert rep.order_search["L"] == ["y,x,z"]
    bad = json.loads(a)
    bad["schema_version"] = 99
    with pytest.raises(ValueError):
        AnalysisReport.from_dict(bad)
    p = tmp_path / "r.json"
    assert run("report", "s4_4", "--json", str(p))[0] == 0
    assert p.read_text(encoding="utf-8") == a


def test_report_for_non_directed():
    rep = build_report(fixture("s4_6"))
    assert rep.graded is None
    assert rep.directedness["directed"] is False
    assert rep.four_conditions["agree"]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "stratalg", "basis", "hereditary_a2"], capture_output=True, text=True)
    assert r.returncode == 0 and "dim A = 3" in r.stdout
    r = subprocess.run([sys.executable, "-m", "stratalg", "basis", "nope"], capture_output=True, text=True)
    assert r.returncode == 2 and "error:" in r.stderr
