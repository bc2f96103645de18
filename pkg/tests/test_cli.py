import json

import pytest
from hypothesis import given

from conftest import relations
from roughdm import cli
from roughdm.approximation import ApproxSpace
from roughdm.completion import build_dm
from roughdm.documents import (
    ParseError, RelationDocument, ReportDocument, decode_pair, encode_pair, render_text,
)
from roughdm.dot import covers_from_order, lattice_dot
from roughdm.fixtures import FIXTURES, fix1, fix2
from roughdm.relations import Relation, Universe


@pytest.fixture
def docs(tmp_path):
    out = {}
    for name, fn in FIXTURES.items():
        p = tmp_path / f"{name}.json"
        p.write_text(RelationDocument.from_relation(fn()).to_json())
        out[name] = str(p)
    p = tmp_path / "empty.json"
    p.write_text('{"universe": ["a", "b", "c"], "relation": {"pairs": []}, "closures": {"reflexive": true}}')
    out["empty"] = str(p)
    p = tmp_path / "one.json"
    p.write_text('{"universe": ["a"], "relation": {"neighborhoods": {"a": ["a"]}}}')
    out["one"] = str(p)
    return out


def run_json(argv, capsys):
    code = cli.run(argv)
    return code, json.loads(capsys.readouterr().out)


# -- documents ---------------------------------------------------------------------

@given(relations())
def test_relation_document_round_trip(r):
    for style in ("pairs", "neighborhoods"):
        doc = RelationDocument.from_relation(r, style)
        again = RelationDocument.from_json(doc.to_json())
        assert again == doc and again.to_relation() == r


def test_document_closure_and_duplicates():
    doc = RelationDocument.from_dict({"universe": ["a", "b"],
                                      "relation": {"pairs": [["a", "b"], ["a", "b"]]},
                                      "closures": {"reflexive": True}})
    r = doc.to_relation()
    assert r.rows == (0b11, 0b10)
    assert RelationDocument.from_json(doc.to_json()).reflexive_closure


@pytest.mark.parametrize("text, where", [
    ('{"universe": ["a"], "relation": {"pairs": [["a", "z"]]}}', "relation.pairs[0]"),
    ('{"universe": ["a"], "relation": {}}', "relation"),
    ('{"relation": {"pairs": []}}', "universe"),
    ('{"universe": ["a"], "relation": {"pairs": [["a"]]}}', "relation.pairs[0]"),
    ('{"universe": ["a", "a"], "relation": {"pairs": []}}', "universe"),
    ('{"universe": ["a"],\n "relation": ', "line 2"),
])
def test_parse_errors_name_location(text, where):
    with pytest.raises(ParseError) as info:
        RelationDocument.from_json(text).to_relation()
    assert where in str(info.value)


def test_report_round_trip_and_pairs():
    u = Universe(("a", "b"))
    rep = ReportDocument(input={"universe": ["a", "b"]}, flags={"reflexive": True}, sizes={"rs": 3},
                         sections={"x": {"elements": [[["a"], ["a", "b"]]]}})
    assert ReportDocument.from_json(rep.to_json()) == rep
    p = decode_pair([["a"], ["a", "b"]], u)
    assert encode_pair(p, u) == [["a"], ["a", "b"]]
    assert "sizes:" in render_text(rep.to_dict())


# -- DOT -----------------------------------------------------------------------------

def test_dot_conventions():
    r = fix2()
    lat = build_dm(ApproxSpace(r))
    text = lattice_dot(lat, r.universe)
    assert text.count("shape=box") == 2
    assert text.count("style=filled") == 6            # sharp elements of the five-point path
    assert "rankdir=BT" in text
    assert text.count("->") == len(covers_from_order(lat.leq))
    assert lattice_dot(lat, r.universe) == text


def test_dot_single_point(docs, capsys):
    assert cli.run(["dot", docs["one"], "--target", "rs"]) == 0
    out = capsys.readouterr().out
    assert out.count("[label=") == 2 and out.count("->") == 1


def test_dot_targets(docs, capsys):
    for target in ("rs", "dm", "center", "clopen"):
        assert cli.run(["dot", docs["fix1"], "--target", target]) == 0
    out = capsys.readouterr().out
    assert "peripheries=2" in out


# -- commands ---------------------------------------------------------------------------

def test_info(docs, capsys):
    code, d = run_json(["info", docs["fix2"]], capsys)
    assert code == 0 and d["sizes"] == {"rs": 23, "dm": 25, "added": 2}
    assert d["flags"]["tolerance"]


def test_rs_fix3_canonical(docs, capsys):
    code, d = run_json(["rs", docs["fix3"]], capsys)
    assert code == 0 and len(d["sections"]["rs"]["elements"]) == 8
    assert d["sections"]["rs"]["elements"][0] == [[], []]
    assert d["sections"]["rs"]["is_lattice"]


def test_rs_empty_with_closure(docs, capsys):
    code, d = run_json(["rs", docs["empty"]], capsys)
    els = d["sections"]["rs"]["elements"]
    assert len(els) == 8 and all(lo == hi for lo, hi in els)


def test_dm_flags_added(docs, capsys):
    code, d = run_json(["dm", docs["fix2"]], capsys)
    rows = d["sections"]["dm"]["elements"]
    assert sum(r["completion_added"] for r in rows) == 2
    assert all(r["membership"]["holds"] for r in rows)


def test_check_properties(docs, capsys):
    code, d = run_json(["check", docs["fix3"], "pbz-star", "--neg", "from-equivalence:ab|c"], capsys)
    assert code == 0 and d["sections"]["check"]["status"] == "pass"
    code, d = run_json(["check", docs["fix3"], "pbz-star", "--neg", "from-equivalence:{abc}"], capsys)
    chk = d["sections"]["check"]
    assert code == 1 and all(chk["axioms"][k] for k in ("BZ1", "BZ2", "BZ3", "BZ4"))
    assert chk["antiortholattice"] is False
    code, d = run_json(["check", docs["fix1"], "chajda"], capsys)
    assert code == 0 and d["sections"]["check"]["status"] == "info"
    assert d["sections"]["check"]["witness"]["lhs"] == "(∅,ab)"
    code, d = run_json(["check", docs["fix1"], "pbz", "--neg", "from-subortholattice:a/ab;c/bc"], capsys)
    assert code == 0
    for prop in ("pseudo-kleene", "paraorthomodular", "sharp", "central", "suite"):
        code, d = run_json(["check", docs["fix2"], prop], capsys)
        assert code == 0, prop
    code, d = run_json(["check", docs["fix4"], "stone"], capsys)
    assert code == 0 and d["sections"]["check"]["stone"]["is_stone"]


def test_exit_codes(docs, capsys):
    assert cli.run(["check", docs["fix1"], "nonsense"]) == 2
    assert cli.run(["check", docs["fix1"], "bz", "--neg", "from-equivalence:ab"]) == 2
    assert cli.run(["check", docs["fix1"], "bz", "--neg", "bogus:x"]) == 2
    assert cli.run(["dm", docs["fix2"], "--cap", "3"]) == 3
    assert cli.run(["mine", "--n", "5", "--exhaustive"]) == 2
    assert cli.run(["info", "/nonexistent.json"]) == 2
    capsys.readouterr()


def test_mine_commands(docs, capsys, tmp_path):
    code, d = run_json(["mine", "--n", "3", "--exhaustive"], capsys)
    assert code == 0 and d["summary"] == {"instances": 64, "violations": 0, "details": []}
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.run(["mine", "--n", "5", "--sample", "10", "--seed", "7", "--out", str(a)]) == 0
    assert cli.run(["mine", "--n", "5", "--sample", "10", "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    code, d = run_json(["mine", "--n", "3", "--filter", "quasiorder"], capsys)
    assert d["summary"]["instances"] == sum(
        1 for inst in d["instances"])


def test_text_format(docs, capsys):
    assert cli.run(["info", docs["fix1"], "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("tool:") and "closure_classes" in out


def test_labels_parsing():
    u = Universe(("x1", "x2", "y"))
    assert cli.parse_labels("x1,y", u) == 0b101
    assert cli.parse_labels("∅", u) == 0
    assert cli.parse_partition("x1,x2|y", u).blocks == (0b011, 0b100)
    with pytest.raises(ParseError):
        cli.parse_partition("x1|y", u)
    assert cli.parse_elements("x1/x1,x2; ∅/y", u)[1].upper == 0b100
