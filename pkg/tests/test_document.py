import re
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import data_path, load
from qpcohom.cli import main
from qpcohom.document import (
    InputDocument,
    ParseError,
    document_from_triangulation,
    dump,
    parse,
    parse_terms,
    report_from_json,
    report_to_json,
)
from qpcohom.geometry import once_punctured_triangulations

FIXTURES = sorted(p.name for p in (resources.files("qpcohom") / "data").iterdir() if p.name.endswith(".qp"))


def test_e8_fixture_parses():
    doc = load("e8_tilted.qp")
    assert len(doc.vertices) == 10
    assert len(doc.relations) == 5
    assert doc.declared_type == "E~"
    assert len(doc.relation_list()) == 5


def test_empty_relations_give_hereditary_pipeline():
    doc = load("kronecker.qp")
    assert doc.relations == []
    qp = doc.qp()
    assert not qp.potential and not qp.quiver.new_arrows


def test_non_composable_path_reports_token():
    doc = parse("[quiver]\nvertices = 1..3\narrow a : 1 -> 2\narrow b : 2 -> 3\n[relations]\nr = b.a\n")
    with pytest.raises(ParseError) as err:
        doc.qp()
    assert err.value.token == "b.a" and err.value.line == 6


def test_undeclared_arrow_and_vertex():
    doc = parse("[quiver]\nvertices = 1 2\narrow a : 1 -> 2\n[relations]\nr = a.c\n")
    with pytest.raises(ParseError, match="undeclared arrow"):
        doc.qp()
    doc = parse("[quiver]\nvertices = 1 2\narrow a : 1 -> 7\n")
    with pytest.raises(ParseError, match="undeclared vertex"):
        doc.quiver()


def test_terms_grammar():
    assert parse_terms("a.b - 1/2 c.d + 3*e.f") == [
        (Fraction(1), ("a", "b")),
        (Fraction(-1, 2), ("c", "d")),
        (Fraction(3), ("e", "f")),
    ]
    assert parse_terms("-a.b") == [(Fraction(-1), ("a", "b"))]
    for bad in ("a.b +", "0.5 a.b", "a.b c.d", "+ - a", "2", "a..b", "0 a.b", ""):
        with pytest.raises(ParseError):
            parse_terms(bad)


def test_unknown_section_and_statement_outside():
    with pytest.raises(ParseError, match="unknown section"):
        parse("[quivers]\n")
    with pytest.raises(ParseError, match="outside any section"):
        parse("vertices = 1..2\n")


def test_quiver_and_surface_are_exclusive():
    with pytest.raises(ParseError):
        parse("[quiver]\nvertices = 1\n[surface]\nboundary = 3\npunctures = p\n")


def test_potential_terms_must_be_cycles():
    doc = parse("[quiver]\nvertices = 1..3\narrow a : 1 -> 2\narrow b : 2 -> 3\n[potential]\nW = a.b\n")
    with pytest.raises(ParseError, match="not a cycle"):
        doc.qp()


@pytest.mark.parametrize("name", FIXTURES)
def test_dump_round_trip(name):
    doc = load(name)
    again = parse(dump(doc))
    assert again == doc
    assert dump(again) == dump(doc)


def test_round_trip_of_enumerated_triangulations():
    for T in once_punctured_triangulations(4):
        doc = document_from_triangulation(T)
        assert parse(dump(doc)) == doc
        assert parse(dump(doc)).triangulation().arcs == T.arcs


def test_report_json_round_trip():
    payload = {"a": [1, 2], "b": {"c": "x"}, "f": Fraction(1, 2)}
    text = report_to_json(payload)
    assert report_from_json(text) == {"a": [1, 2], "b": {"c": "x"}, "f": "1/2"}
    assert report_to_json(report_from_json(text)) == text


# ---------------------------------------------------------------------------
# single-token fuzzing: every mutated fixture is rejected as an input error

GARBAGE = ["@", "1.5", "b(0,9)x", "=="]
TOKEN = re.compile(r"\S+")


def _mutations(text):
    lines = text.splitlines()
    for i, line in enumerate(lines):
        body = line.split("#", 1)[0]
        for m in TOKEN.finditer(body):
            for g in GARBAGE:
                new = line[: m.start()] + g + line[m.end() :]
                yield "\n".join(lines[:i] + [new] + lines[i + 1 :]) + "\n"


def _build(doc: InputDocument):
    return doc.triangulation() if doc.is_geometry else doc.qp()


@pytest.mark.parametrize("name", FIXTURES)
def test_single_token_fuzzing_rejected(name):
    text = open(data_path(name), encoding="utf-8").read()
    count = 0
    for mutated in _mutations(text):
        count += 1
        with pytest.raises(ParseError):
            _build(parse(mutated))
    assert count > 0


@pytest.mark.parametrize("name", ["e8_tilted.qp", "twice_punctured_type_v.qp", "c_t2.qp"])
def test_fuzzed_files_exit_two(tmp_path, name):
    text = open(data_path(name), encoding="utf-8").read()
    for k, mutated in enumerate(_mutations(text)):
        if k % 7:
            continue
        f = tmp_path / "m.qp"
        f.write_text(mutated, encoding="utf-8")
        assert main(["nw", str(f)]) == 2


@given(st.text(max_size=200))
@settings(max_examples=200, deadline=None)
def test_arbitrary_text_never_panics(text):
    try:
        doc = parse(text)
        _build(doc)
    except ParseError:
        pass
