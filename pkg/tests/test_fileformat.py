import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jordanlie.corpus import RandomAlgebraParams, build_matrix_algebra, random_algebra
from jordanlie.errors import ParseError
from jordanlie.fileformat import AlgebraFile, emit, emit_algebra, parse, read
from jordanlie.scalars import FieldSpec

M2 = build_matrix_algebra(2)


def same(A, B):
    return (A.field == B.field and A.dim == B.dim and A.labels == B.labels
            and A.structure_constants() == B.structure_constants() and A.unit == B.unit)


def test_round_trip_m2():
    text = emit_algebra(M2, {"B": [M2.element({"e12": 1})]})
    doc = parse(text)
    assert same(doc.algebra, M2)
    assert doc.subspace("B") == (M2.element({"e12": 1}),)
    assert emit(doc) == text
    assert [b.units for b in doc.algebra.levi().blocks] == [b.units for b in M2.levi().blocks]


def test_round_trip_example_nr(nr):
    text = emit_algebra(nr.algebra, {"B": nr.generators}, with_levi=False)
    doc = parse(text)
    assert same(doc.algebra, nr.algebra) and doc.levi is None
    assert emit(doc) == text


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from([0, 17]))
def test_round_trip_random(seed, p):
    A = random_algebra(seed, RandomAlgebraParams(max_dim=10, field=FieldSpec(p)))
    text = emit_algebra(A)
    doc = parse(text)
    assert same(doc.algebra, A)
    assert emit(doc) == text


def test_rationals_are_strings():
    half = M2.element({"e11": "1/2"})
    text = emit_algebra(M2, {"h": [half]}, with_levi=False)
    assert '"1/2"' in text
    assert parse(text).subspace("h") == (half,)


def test_prime_field_format():
    A = build_matrix_algebra(2, FieldSpec(7))
    text = emit_algebra(A)
    raw = json.loads(text)
    assert raw["field"] == "F7"
    assert all(len(e) == 4 for e in raw["sc"])
    assert same(parse(text).algebra, A)


def test_default_and_override_field():
    raw = json.loads(emit_algebra(M2, with_levi=False))
    del raw["field"]
    text = json.dumps(raw)
    assert parse(text).algebra.field == FieldSpec(0)
    assert parse(text, default_field=FieldSpec(0)).algebra.field == FieldSpec(0)


def test_minimal_document():
    doc = parse('{"dim": 1, "sc": [[0, 0, 0, 1, 1]]}')
    assert doc.algebra.dim == 1 and doc.subspaces == {}


def test_read_from_path(tmp_path):
    path = tmp_path / "m2.json"
    path.write_text(emit_algebra(M2))
    assert same(read(path).algebra, M2)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ('{\n  "dim": 2,\n  "sc": [1, \n}', 4, 1),
        ('{"dim": 1, "sc": [], "colour": 3}', 1, 22),
        ('{\n  "dim": -1,\n  "sc": []\n}', 2, 3),
        ('{\n  "dim": 1,\n  "sc": [[0, 0, 5, 1, 1]]\n}', 3, 3),
    ],
)
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"line {line}, column {column}:")


@pytest.mark.parametrize(
    "text",
    [
        "[]",
        '{"sc": []}',
        '{"dim": 1}',
        '{"dim": 1, "sc": [[0, 0, 0, 1, 0]]}',
        '{"dim": 1, "sc": [[0, 0, 0, 1]]}',
        '{"field": "F4", "dim": 1, "sc": []}',
        '{"dim": 2, "labels": ["a", "a"], "sc": []}',
        '{"dim": 1, "sc": [], "subspaces": {"B": [["1/0"]]}}',
        '{"dim": 1, "sc": [], "subspaces": {"B": [[1, 2]]}}',
        '{"dim": 1, "sc": [], "levi": [{"size": 2, "units": []}]}',
    ],
)
def test_malformed_documents(text):
    with pytest.raises(ParseError):
        parse(text)


def test_unknown_subspace_name():
    doc = AlgebraFile.from_algebra(M2)
    with pytest.raises(KeyError):
        doc.subspace("B")
