import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import EXAMPLE_LITERAL, EXAMPLE_TREE, rand_schema, rand_tree
from mu_wire import (
    BINARY_TREE,
    BYTE,
    REC,
    UNIT,
    Byte,
    Ctor,
    ParseError,
    Prod,
    Rec,
    Schema,
    Tree,
    Unit,
    conforms,
    fmap_meaning,
    fold,
    format_tree,
    leaf,
    node,
    parse_tree,
    rightmost_tree,
    shape_of,
    sum_tree,
)


def oracle_fold(schema, alg, t):
    # Direct structural recursion, no fmap indirection.
    def walk(d, m):
        match d:
            case Unit() | Byte():
                return m
            case Prod(l, r):
                return (walk(l, m[0]), walk(r, m[1]))
            case Rec():
                return oracle_fold(schema, alg, m)
        raise AssertionError(d)

    return alg(t.tag, walk(shape_of(schema, t.tag), t.args))


def collect_parts(d, m, bytes_out, subs_out):
    """Split a mapped argument tuple into its byte values and subtree results."""
    match d:
        case Unit():
            pass
        case Byte():
            bytes_out.append(m)
        case Prod(l, r):
            collect_parts(l, m[0], bytes_out, subs_out)
            collect_parts(r, m[1], bytes_out, subs_out)
        case Rec():
            subs_out.append(m)


def generic_sum_alg(schema):
    def alg(tag, args):
        bs, subs = [], []
        collect_parts(shape_of(schema, tag), args, bs, subs)
        return sum(bs) + sum(subs)

    return alg


def generic_size_alg(schema):
    def alg(tag, args):
        bs, subs = [], []
        collect_parts(shape_of(schema, tag), args, bs, subs)
        return 1 + sum(subs)

    return alg


def generic_depth_alg(schema):
    def alg(tag, args):
        bs, subs = [], []
        collect_parts(shape_of(schema, tag), args, bs, subs)
        return 1 + max(subs) if subs else 0

    return alg


def test_conforms():
    assert conforms(BINARY_TREE, EXAMPLE_TREE)
    assert not conforms(BINARY_TREE, Tree(0, 7))  # leaf takes no byte
    assert not conforms(BINARY_TREE, Tree(5, ()))  # tag out of range
    assert not conforms(BINARY_TREE, Tree(1, (leaf, (256, leaf))))
    assert not conforms(BINARY_TREE, Tree(1, (leaf, (True, leaf))))


def test_fmap_meaning_examples():
    f = lambda sub: "touched"
    assert fmap_meaning(UNIT, f, ()) == ()
    assert fmap_meaning(BYTE, f, 5) == 5
    sized = fmap_meaning(Prod(REC, REC), lambda t: 1, (leaf, leaf))
    assert sized == (1, 1)


def test_fold_examples():
    assert fold(BINARY_TREE, generic_sum_alg(BINARY_TREE), EXAMPLE_TREE) == 36
    assert fold(BINARY_TREE, generic_sum_alg(BINARY_TREE), leaf) == 0
    full3 = node(
        node(node(leaf, 1, leaf), 1, node(leaf, 1, leaf)),
        1,
        node(node(leaf, 1, leaf), 1, node(leaf, 1, leaf)),
    )
    assert fold(BINARY_TREE, generic_depth_alg(BINARY_TREE), full3) == 3


def test_sum_tree():
    assert sum_tree(EXAMPLE_TREE) == 36
    assert sum_tree(leaf) == 0
    assert sum_tree(node(leaf, 255, leaf)) == 255


def test_rightmost_tree():
    assert rightmost_tree(EXAMPLE_TREE) == 20
    assert rightmost_tree(leaf) is None
    assert rightmost_tree(node(node(leaf, 9, leaf), 3, leaf)) == 3


@given(st.integers(0, 2**32 - 1))
def test_fold_matches_direct_recursion(seed):
    rng = random.Random(seed)
    schema = rand_schema(rng)
    t = rand_tree(rng, schema)
    for mk in (generic_sum_alg, generic_size_alg, generic_depth_alg):
        alg = mk(schema)
        assert fold(schema, alg, t) == oracle_fold(schema, alg, t)


@given(st.integers(0, 2**32 - 1))
def test_fold_with_rebuild_is_identity(seed):
    rng = random.Random(seed)
    schema = rand_schema(rng)
    t = rand_tree(rng, schema)
    assert fold(schema, Tree, t) == t


@given(st.integers(0, 2**32 - 1))
def test_fmap_composes_and_preserves_conformance(seed):
    rng = random.Random(seed)
    schema = rand_schema(rng)
    t = rand_tree(rng, schema)
    d = shape_of(schema, t.tag)
    f = lambda sub: Tree(sub.tag, sub.args)
    g = lambda sub: (sub, sub)
    lhs = fmap_meaning(d, lambda x: g(f(x)), t.args)
    rhs = fmap_meaning(d, g, fmap_meaning(d, f, t.args))
    assert lhs == rhs
    assert conforms(schema, Tree(t.tag, fmap_meaning(d, f, t.args)))


def test_format_tree_example():
    assert format_tree(BINARY_TREE, EXAMPLE_TREE) == EXAMPLE_LITERAL
    assert format_tree(BINARY_TREE, leaf) == "leaf"


def test_parse_tree_example():
    assert parse_tree(BINARY_TREE, EXAMPLE_LITERAL) == EXAMPLE_TREE
    assert parse_tree(BINARY_TREE, "leaf") == leaf
    assert parse_tree(BINARY_TREE, " ( node leaf 0 leaf ) ") == node(leaf, 0, leaf)


def test_literal_round_trip_random():
    rng = random.Random(11)
    for _ in range(300):
        schema = rand_schema(rng)
        t = rand_tree(rng, schema)
        assert parse_tree(schema, format_tree(schema, t)) == t


@pytest.mark.parametrize(
    "text",
    [
        "",
        "(node leaf 300 leaf)",
        "(node leaf 10)",
        "(node leaf 10 leaf leaf)",
        "(cons leaf 1 leaf)",
        "node",
        "leaf trailing",
        "(leaf)(leaf)",
        "((node leaf 1 leaf))",
        "7",
    ],
)
def test_parse_tree_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_tree(BINARY_TREE, text)


def test_literal_of_token_free_product():
    # A constructor whose whole layout stores nothing prints bare.
    s = Schema([Ctor("pairofnothing", Prod(UNIT, UNIT))])
    t = Tree(0, ((), ()))
    assert format_tree(s, t) == "pairofnothing"
    assert parse_tree(s, "pairofnothing") == t
