"""Shared fixtures: the golden example file and random structure generators."""

from __future__ import annotations

import random

import pytest

from mu_wire import (
    BINARY_TREE,
    BYTE,
    REC,
    UNIT,
    Byte,
    Ctor,
    Prod,
    Rec,
    Schema,
    Tree,
    Unit,
    leaf,
    node,
    shape_of,
)

# The 60-byte reference file: a binary tree with bytes 1, 5, 10, 20 in its
# nodes, under the schema { leaf: none, node: (rec * (byte * rec)) }.
GOLDEN = bytes.fromhex(
    "07 00 00 00 00 00 00 00 02 00 02 03 02 01 03 01"
    "17 00 00 00 00 00 00 00 01 0c 00 00 00 00 00 00"
    "00 01 01 00 00 00 00 00 00 00 00 01 00 05 00 0a"
    "01 01 00 00 00 00 00 00 00 00 14 00".replace(" ", "")
)

EXAMPLE_TREE = node(node(node(leaf, 1, leaf), 5, leaf), 10, node(leaf, 20, leaf))
EXAMPLE_LITERAL = "(node (node (node leaf 1 leaf) 5 leaf) 10 (node leaf 20 leaf))"
TREE_DSL = "mu { leaf: none, node: (rec * (byte * rec)) }"

HEADER_LEN = 15  # 8-byte length + count byte + 6 shape bytes


@pytest.fixture
def golden_file(tmp_path):
    path = tmp_path / "golden.bin"
    path.write_bytes(GOLDEN)
    return path


def rand_desc(rng: random.Random, max_depth: int) -> object:
    if max_depth > 0 and rng.random() < 0.45:
        return Prod(rand_desc(rng, max_depth - 1), rand_desc(rng, max_depth - 1))
    return rng.choice((UNIT, BYTE, REC))


def has_rec(d) -> bool:
    match d:
        case Rec():
            return True
        case Prod(left, right):
            return has_rec(left) or has_rec(right)
        case _:
            return False


def rand_schema(rng: random.Random, max_ctors: int = 10, max_depth: int = 6) -> Schema:
    n = rng.randint(1, max_ctors)
    ctors = [Ctor(f"c{i}", rand_desc(rng, max_depth)) for i in range(n)]
    if all(has_rec(c.shape) for c in ctors):
        # Guarantee finite trees exist: one constructor must terminate.
        k = rng.randrange(n)
        ctors[k] = Ctor(ctors[k].name, rng.choice((UNIT, BYTE, Prod(BYTE, BYTE))))
    return Schema(ctors)


def rand_tree(rng: random.Random, schema: Schema, max_depth: int = 6) -> Tree:
    terminal = [i for i, c in enumerate(schema.ctors) if not has_rec(c.shape)]

    def gen_args(d, depth):
        match d:
            case Unit():
                return ()
            case Byte():
                return rng.randrange(256)
            case Prod(left, right):
                return (gen_args(left, depth), gen_args(right, depth))
            case Rec():
                return gen(depth - 1)
        raise AssertionError(d)

    def gen(depth):
        tag = rng.choice(terminal) if depth <= 0 else rng.randrange(len(schema.ctors))
        return Tree(tag, gen_args(shape_of(schema, tag), depth))

    return gen(max_depth)


def rand_binary_tree(rng: random.Random, max_depth: int = 6) -> Tree:
    return rand_tree(rng, BINARY_TREE, max_depth)
