import json
from fractions import Fraction

import pytest

from courant_deform.algebra import AxiomError, GALLERY_NAMES, PoissonData
from courant_deform.documents import (bundled_text, dumps, gallery_document, load_document, parse_document,
                                      require_valid, serialize)
from courant_deform.exactmath import QQ, QQ_XI, ParseError, RatFunc, SingularParameterError


def p2_raw():
    return json.loads(bundled_text("p2"))


@pytest.mark.parametrize("name", GALLERY_NAMES)
def test_bundled_documents_round_trip(name):
    doc = load_document(name)
    again = parse_document(json.loads(dumps(doc)), name=name)
    assert again.kind == doc.kind
    assert serialize(again) == serialize(doc)
    s1, s2 = doc.structure, again.structure
    if isinstance(s1, PoissonData):
        assert (s1.product, s1.bracket) == (s2.product, s2.bracket)
    else:
        assert (s1.assoc, s1.bracket, s1.anchor) == (s2.assoc, s2.bracket, s2.anchor)
    assert doc.witnesses() == []


@pytest.mark.parametrize("name", GALLERY_NAMES)
def test_bundled_files_match_gallery(name):
    assert bundled_text(name) == dumps(gallery_document(name))


def test_p1_specializations():
    doc = load_document("p1")
    assert doc.xi == "symbolic" and doc.structure.field is QQ_XI
    assert doc.structure.product[0][1][2] == RatFunc.xi()
    special = load_document("p1", "5/7")
    assert special.xi == "5/7" and special.structure.field is QQ
    assert special.structure.product[1][0][2] == Fraction(5, 7)
    with pytest.raises(SingularParameterError):
        load_document("p1", "0")
    with pytest.raises(ParseError):
        load_document("p1", "x")


def test_file_suffix_resolves_to_bundled():
    assert load_document("p1.alg", "1").name == "p1"


def test_load_from_path(tmp_path):
    f = tmp_path / "mine.json"
    f.write_text(bundled_text("p2"), encoding="utf-8")
    doc = load_document(str(f))
    assert doc.name == "p2"
    f.write_text("{not json", encoding="utf-8")
    with pytest.raises(ParseError, match="invalid JSON"):
        load_document(str(f))
    with pytest.raises(ParseError):
        load_document(str(tmp_path / "missing.json"))


def test_unknown_and_missing_fields():
    raw = p2_raw()
    raw["colour"] = "blue"
    with pytest.raises(ParseError, match="colour"):
        parse_document(raw)
    raw = p2_raw()
    del raw["bracket"]
    with pytest.raises(ParseError, match="bracket"):
        parse_document(raw)
    raw = p2_raw()
    raw["schema_version"] = 2
    with pytest.raises(ParseError):
        parse_document(raw)


def test_bad_scalar_reports_its_location():
    raw = p2_raw()
    raw["product"][0][1][2] = "1/0"
    with pytest.raises(ParseError, match=r"\$\.product\[0\]\[1\]\[2\]"):
        parse_document(raw)
    raw = p2_raw()
    raw["product"][0][1][2] = 0.5
    with pytest.raises(ParseError):
        parse_document(raw)


def test_bad_shapes():
    raw = p2_raw()
    raw["product"][0].pop()
    with pytest.raises(ParseError, match="length 3"):
        parse_document(raw)
    raw = p2_raw()
    raw["dim"] = -1
    with pytest.raises(ParseError):
        parse_document(raw)
    raw = p2_raw()
    raw["labels"] = ["a", "a", "b"]
    with pytest.raises(ParseError, match="distinct"):
        parse_document(raw)


def test_xi_only_for_symbolic_field():
    raw = p2_raw()
    raw["xi"] = "1"
    with pytest.raises(ParseError):
        parse_document(raw)


def test_invalid_structure_is_rejected():
    raw = p2_raw()
    raw["product"][0][1][2] = "1"  # e1 e2 = e3 but e2 e1 = 0
    doc = parse_document(raw)
    assert doc.witnesses()
    with pytest.raises(AxiomError):
        require_valid(doc)


def test_lie_kind_checks_antisymmetry():
    raw = json.loads(bundled_text("heisenberg-lie"))
    raw["bracket"][1][0][2] = "0"
    doc = parse_document(raw)
    assert any(w.axiom == "antisymmetry" for w in doc.witnesses())


def test_dumps_is_compact_and_stable():
    text = dumps(load_document("p2"))
    assert '["0", "0", "1"]' in text
    assert text == dumps(load_document("p2"))
    assert text.endswith("\n")
