import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mu_wire import (
    BINARY_TREE,
    BYTE,
    REC,
    UNIT,
    Byte,
    Ctor,
    DuplicateName,
    ParseError,
    Prod,
    Rec,
    Schema,
    TooManyConstructors,
    Unit,
    UnknownConstructor,
    format_schema_dsl,
    index_of,
    offset_count,
    parse_schema_dsl,
    shape_of,
    static_size,
    validate_schema,
)

NODE_SHAPE = Prod(REC, Prod(BYTE, REC))

descs = st.recursive(
    st.sampled_from((UNIT, BYTE, REC)), lambda c: st.builds(Prod, c, c), max_leaves=32
)
schemas = st.lists(descs, min_size=0, max_size=10).map(
    lambda ds: Schema([Ctor(f"c{i}", d) for i, d in enumerate(ds)])
)


def oracle_static(d):
    # Independent recomputation, kept deliberately separate from the library.
    if isinstance(d, (Unit, Rec)):
        return 0
    if isinstance(d, Byte):
        return 1
    return oracle_static(d.left) + oracle_static(d.right)


def oracle_offsets(d, rightmost):
    if isinstance(d, (Unit, Byte)):
        return 0
    if isinstance(d, Rec):
        return 0 if rightmost else 1
    return oracle_offsets(d.left, False) + oracle_offsets(d.right, rightmost)


@pytest.mark.parametrize(
    "d,expected",
    [(UNIT, 0), (NODE_SHAPE, 1), (Prod(BYTE, BYTE), 2), (BYTE, 1), (REC, 0)],
)
def test_static_size_examples(d, expected):
    assert static_size(d) == expected


@pytest.mark.parametrize(
    "d,rightmost,expected",
    [
        (REC, True, 0),
        (NODE_SHAPE, True, 1),
        (Prod(REC, REC), False, 2),
        (Prod(REC, REC), True, 1),
    ],
)
def test_offset_count_examples(d, rightmost, expected):
    assert offset_count(d, rightmost) == expected


@given(descs)
def test_size_arithmetic_matches_oracle(d):
    assert static_size(d) == oracle_static(d)
    assert offset_count(d, True) == oracle_offsets(d, True)
    assert offset_count(d, False) == oracle_offsets(d, False)


@given(descs)
def test_only_the_rightmost_slot_toggles(d):
    assert offset_count(d, True) <= offset_count(d, False) <= offset_count(d, True) + 1


def test_index_of():
    assert index_of(BINARY_TREE, "leaf") == 0
    assert index_of(BINARY_TREE, "node") == 1
    with pytest.raises(UnknownConstructor):
        index_of(BINARY_TREE, "cons")


def test_shape_of():
    assert shape_of(BINARY_TREE, 0) == UNIT
    assert shape_of(BINARY_TREE, 1) == NODE_SHAPE
    single = Schema([Ctor("only", BYTE)])
    assert shape_of(single, 0) == BYTE


def test_validate_schema():
    validate_schema(BINARY_TREE)
    with pytest.raises(TooManyConstructors):
        validate_schema(Schema([Ctor(f"c{i}", UNIT) for i in range(256)]))
    with pytest.raises(DuplicateName):
        validate_schema(Schema([Ctor("x", UNIT), Ctor("x", BYTE)]))
    validate_schema(Schema([]))  # empty is fine for codec purposes


def test_dsl_parses_the_running_example():
    parsed = parse_schema_dsl("mu { leaf: none, node: (rec * (byte * rec)) }")
    assert parsed == BINARY_TREE


def test_dsl_round_trip_random():
    from conftest import rand_schema

    rng = random.Random(7)
    for _ in range(200):
        s = rand_schema(rng)
        assert parse_schema_dsl(format_schema_dsl(s)) == s


def test_dsl_empty_schema():
    assert parse_schema_dsl("mu {}") == Schema([])
    assert parse_schema_dsl("mu {  }") == Schema([])
    assert format_schema_dsl(Schema([])) == "mu {}"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "mu {",
        "mu { x }",
        "mu { x: }",
        "mu { x: maybe }",
        "mu { x: (rec) }",
        "mu { x: rec extra }",
        "mu { x: rec } trailing",
        "mu { 9bad: rec }",
    ],
)
def test_dsl_rejects_malformed(text):
    with pytest.raises(ParseError) as exc:
        parse_schema_dsl(text)
    assert exc.value.pos >= 0


def test_dsl_rejects_duplicate_names():
    with pytest.raises(DuplicateName):
        parse_schema_dsl("mu { x: none, x: byte }")
