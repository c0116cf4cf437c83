"""Document parsing/serialization, reports, DOT export, and the CLI surface."""

import json

import pytest

from krcascade import (
    Caps,
    CoveringWitness,
    HomImageWitness,
    ParseError,
    Semiautomaton,
    emit_automaton,
    emit_witness,
    export_dot,
    krohn_rhodes_decompose,
    parse_automaton,
    parse_witness,
    render_tree_text,
    tree_report,
    verify_covering,
    verify_hom_image,
)
from krcascade.cli import main

SA3_DOC = {
    "format_version": 1,
    "states": ["1", "2", "3"],
    "alphabet": ["a", "b"],
    "transitions": {"a": ["1", "1", "1"], "b": ["2", "2", "3"]},
}


def test_automaton_round_trip(sa3, five_state):
    text = emit_automaton(sa3)
    assert parse_automaton(text) == sa3
    assert emit_automaton(parse_automaton(text)) == text
    assert parse_automaton(emit_automaton(five_state)) == five_state
    assert parse_automaton(json.dumps(SA3_DOC)) == sa3


def _broken(doc, **changes):
    out = dict(doc)
    out.update(changes)
    return json.dumps(out)


def test_parse_automaton_errors():
    cases = [
        "not json at all",
        json.dumps([1, 2]),
        _broken(SA3_DOC, format_version=7),
        _broken(SA3_DOC, states="abc"),
        _broken(SA3_DOC, states=["1", 2, "3"]),
        _broken(SA3_DOC, states=["1", "1", "3"]),
        _broken(SA3_DOC, states=[], transitions={"a": [], "b": []}),
        _broken(SA3_DOC, transitions=[["a", "1"]]),
        _broken(SA3_DOC, transitions={"a": ["1", "1", "1"], "b": ["2", "2", "3"], "c": ["1", "1", "1"]}),
        _broken(SA3_DOC, transitions={"a": ["1", "1", "1"]}),
        _broken(SA3_DOC, transitions={"a": ["1", "1"], "b": ["2", "2", "3"]}),
        _broken(SA3_DOC, transitions={"a": ["1", "9", "1"], "b": ["2", "2", "3"]}),
    ]
    for text in cases:
        with pytest.raises(ParseError):
            parse_automaton(text)


def test_parse_automaton_error_messages():
    with pytest.raises(ParseError, match="unknown symbol 'c'"):
        parse_automaton(
            _broken(SA3_DOC, transitions=dict(SA3_DOC["transitions"], c=["1", "1", "1"]))
        )
    with pytest.raises(ParseError, match="unknown state label '9'.*position 1"):
        parse_automaton(
            _broken(SA3_DOC, transitions={"a": ["1", "9", "1"], "b": ["2", "2", "3"]})
        )


def test_covering_witness_round_trip(sa3, sa2):
    w = CoveringWitness(sa3, sa2, [0, 1, None], [0, 1])
    text = emit_witness(w)
    doc = json.loads(text)
    assert doc["kind"] == "covering"
    assert doc["phi"] == [["1", "1"], ["2", "2"]]
    assert doc["xi"] == [["a", "a"], ["b", "b"]]
    back = parse_witness(text, sa3, sa2)
    assert back.phi == w.phi
    assert back.xi == w.xi
    assert verify_covering(back)


def test_wrong_witness_parses_then_fails(sa3, sa2):
    doc = {
        "format_version": 1,
        "kind": "covering",
        "phi": [["1", "1"], ["2", "2"]],
        "xi": [["a", "b"], ["b", "a"]],
    }
    w = parse_witness(json.dumps(doc), sa3, sa2)
    res = verify_covering(w)
    assert not res
    assert res.site is not None


def test_hom_witness_round_trip():
    source = Semiautomaton(["1", "2", "3"], ["a"], [[2], [2], [2]])
    target = Semiautomaton(["1", "2"], ["a"], [[1], [1]])
    w = HomImageWitness(source, target, [0, 0, 1], [0])
    back = parse_witness(emit_witness(w), source, target)
    assert back.phi == w.phi and back.xi == w.xi
    assert verify_hom_image(back)


def test_parse_witness_errors(sa3, sa2):
    base = {
        "format_version": 1,
        "kind": "covering",
        "phi": [["1", "1"], ["2", "2"]],
        "xi": [["a", "a"], ["b", "b"]],
    }
    bad = [
        dict(base, kind="something"),
        dict(base, phi="nope"),
        dict(base, phi=[["1"]]),
        dict(base, phi=[["9", "1"], ["2", "2"]]),
        dict(base, phi=[["1", "9"], ["2", "2"]]),
        dict(base, phi=[["1", "1"], ["1", "2"]]),
        dict(base, xi=[["a", "a"]]),
        dict(base, xi=[["a", "a"], ["z", "b"]]),
        dict(base, xi=[["a", "a"], ["b", "z"]]),
        dict(base, xi=[["a", "a"], ["a", "b"]]),
    ]
    for doc in bad:
        with pytest.raises(ParseError):
            parse_witness(json.dumps(doc), sa3, sa2)


def test_tree_report_complete(five_pr):
    tree = krohn_rhodes_decompose(five_pr)
    report = tree_report(tree, sim_len=5)
    assert report["format_version"] == 1
    assert report["complete"] is True
    assert report["witnesses_verified"] is True
    assert report["simulation_ok"] is True
    assert report["covered_states"] == 5
    assert report["composite_states"] == 40
    assert report["leaves"] == [
        {"description": "simple grouplike: order 5, abelian", "count": 1},
        {"description": "two-state reset", "count": 3},
    ]
    assert report["root"]["type"] == "cascade"
    assert report["root"]["states"] == 40

    text = render_tree_text(report)
    first = text.splitlines()[0]
    assert first == (
        "decomposition of a 5-state automaton into a 40-state cascade: "
        "complete, witnesses verified"
    )
    assert "simulation to length 5: ok" in text
    assert "  1 x simple grouplike: order 5, abelian" in text
    assert "  3 x two-state reset" in text
    assert "leaf simple-grouplike [5 states, group order 5] witness ok" in text


def test_tree_report_incomplete(five_state):
    tree = krohn_rhodes_decompose(five_state, Caps(product_states=200))
    report = tree_report(tree, sim_len=4)
    assert report["complete"] is False
    text = render_tree_text(report)
    assert "INCOMPLETE" in text
    assert "exceeds the cap of 200" in text


def test_export_dot(sa3):
    assert export_dot(sa3) == (
        "digraph semiautomaton {\n"
        "  rankdir=LR;\n"
        '  "1";\n'
        '  "2";\n'
        '  "3";\n'
        '  "1" -> "1" [label="a"];\n'
        '  "1" -> "2" [label="b"];\n'
        '  "2" -> "1" [label="a"];\n'
        '  "2" -> "2" [label="b"];\n'
        '  "3" -> "1" [label="a"];\n'
        '  "3" -> "3" [label="b"];\n'
        "}\n"
    )


def test_export_dot_merges_and_escapes():
    A = Semiautomaton(['s"0', "s1"], ["a", "b"], [[1, 1], [0, 0]])
    out = export_dot(A)
    assert '  "s\\"0" -> "s1" [label="a,b"];\n' in out
    assert '  "s1" -> "s\\"0" [label="a,b"];\n' in out


@pytest.fixture
def docs(tmp_path, five_pr, sa3, sa2):
    paths = {}
    for name, A in (("five_pr", five_pr), ("sa3", sa3), ("sa2", sa2)):
        p = tmp_path / ("%s.json" % name)
        p.write_text(emit_automaton(A), encoding="utf-8")
        paths[name] = str(p)
    w = CoveringWitness(sa3, sa2, [0, 1, None], [0, 1])
    p = tmp_path / "witness.json"
    p.write_text(emit_witness(w), encoding="utf-8")
    paths["witness"] = str(p)
    bad = json.loads(emit_witness(w))
    bad["xi"] = [["a", "b"], ["b", "a"]]
    p = tmp_path / "badwitness.json"
    p.write_text(json.dumps(bad), encoding="utf-8")
    paths["badwitness"] = str(p)
    return paths


def test_cli_decompose(docs, tmp_path, capsys):
    out_path = str(tmp_path / "report.json")
    code = main(["decompose", docs["five_pr"], "--out", out_path])
    out = capsys.readouterr().out
    assert code == 0
    assert "complete, witnesses verified" in out
    with open(out_path, encoding="utf-8") as fh:
        report = json.load(fh)
    assert report["complete"] is True
    assert report["composite_states"] == 40


def test_cli_decompose_deterministic(docs, capsys):
    assert main(["decompose", docs["five_pr"]]) == 0
    first = capsys.readouterr().out
    assert main(["decompose", docs["five_pr"]]) == 0
    assert capsys.readouterr().out == first


def test_cli_decompose_cap_exit(docs, capsys):
    code = main(["decompose", docs["five_pr"], "--cap-states", "8"])
    out = capsys.readouterr().out
    assert code == 3
    assert "INCOMPLETE" in out


def test_cli_decompose_parse_error(tmp_path, capsys):
    p = tmp_path / "junk.json"
    p.write_text("{broken", encoding="utf-8")
    code = main(["decompose", str(p)])
    err = capsys.readouterr().err
    assert code == 2
    assert err.startswith("error:")


def test_cli_missing_file(tmp_path, capsys):
    code = main(["decompose", str(tmp_path / "absent.json")])
    err = capsys.readouterr().err
    assert code == 4
    assert "i/o error" in err


def test_cli_verify(docs, capsys):
    code = main(["verify", docs["sa3"], docs["sa2"], docs["witness"]])
    out = capsys.readouterr().out
    assert code == 0
    assert out.strip() == "covering verified (law and simulation to length 6)"

    code = main(["verify", docs["sa3"], docs["sa2"], docs["badwitness"]])
    out = capsys.readouterr().out
    assert code == 1
    assert out.startswith("covering FAILED")


def test_cli_verify_hom(tmp_path, capsys):
    source = Semiautomaton(["1", "2", "3"], ["a"], [[2], [2], [2]])
    target = Semiautomaton(["1", "2"], ["a"], [[1], [1]])
    sp = tmp_path / "source.json"
    sp.write_text(emit_automaton(source), encoding="utf-8")
    tp = tmp_path / "target.json"
    tp.write_text(emit_automaton(target), encoding="utf-8")

    wp = tmp_path / "hom.json"
    wp.write_text(emit_witness(HomImageWitness(source, target, [0, 0, 1], [0])), encoding="utf-8")
    assert main(["verify", str(sp), str(tp), str(wp)]) == 0
    assert capsys.readouterr().out.strip() == "hom-image verified"

    bad = {
        "format_version": 1,
        "kind": "hom-image",
        "phi": [["1", "2"], ["2", "2"], ["3", "1"]],
        "xi": [["a", "a"]],
    }
    wp.write_text(json.dumps(bad), encoding="utf-8")
    assert main(["verify", str(sp), str(tp), str(wp)]) == 1
    assert capsys.readouterr().out.startswith("hom-image FAILED")


def test_cli_monoid(docs, capsys):
    code = main(["monoid", docs["sa3"]])
    out = capsys.readouterr().out
    assert code == 0
    assert "transition monoid of 3-state automaton: order 4" in out
    lines = out.splitlines()
    assert sum("(permutation)" in ln for ln in lines) == 1
    assert sum("(reset)" in ln for ln in lines) == 2
    assert sum("(other)" in ln for ln in lines) == 1
    assert "table (row then column):" in out


def test_cli_monoid_cap(tmp_path, capsys):
    # a transposition and an 8-cycle generate far more than the closure cap
    big = Semiautomaton.from_columns(
        [str(i) for i in range(8)],
        ["t", "c"],
        [[1, 0, 2, 3, 4, 5, 6, 7], [1, 2, 3, 4, 5, 6, 7, 0]],
    )
    p = tmp_path / "big.json"
    p.write_text(emit_automaton(big), encoding="utf-8")
    code = main(["monoid", str(p)])
    err = capsys.readouterr().err
    assert code == 3
    assert "resource cap exceeded" in err


def test_cli_export_dot(docs, capsys, sa3):
    code = main(["--seed", "7", "export-dot", docs["sa3"]])
    out = capsys.readouterr().out
    assert code == 0
    assert out == export_dot(sa3)
