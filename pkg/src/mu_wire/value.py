"""In-memory trees and the pure generic fold.

A :class:`Tree` is a constructor index plus an argument tuple shaped like
the constructor's :class:`~mu_wire.desc.Desc`: unit positions hold ``()``,
byte positions hold an ``int`` in 0..255, products hold a 2-tuple, and
recursive positions hold a nested :class:`Tree`.

The pure :func:`fold` over these trees is the reference point for every
computation the library performs directly on serialised bytes: whatever
a buffer-resident operation returns must agree with deserialising and
folding.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable, TypeVar

from .desc import BYTE, REC, UNIT, Byte, Ctor, Desc, Prod, Rec, Schema, Unit, shape_of
from .errors import ParseError

A = TypeVar("A")

# An algebra maps a constructor index and its argument tuple -- with every
# recursive position already replaced by a result -- to a result.
Algebra = Callable[[int, Any], A]


@dataclass(frozen=True, slots=True)
class Tree:
    """A constructor choice applied to a conforming argument tuple."""

    tag: int
    args: Any = ()


def conforms(schema: Schema, t: Any) -> bool:
    """True iff ``t`` is a structurally valid tree of the schema."""
    if not isinstance(t, Tree) or not 0 <= t.tag < len(schema.ctors):
        return False
    return _conforms_args(schema, shape_of(schema, t.tag), t.args)


def _conforms_args(schema: Schema, d: Desc, m: Any) -> bool:
    match d:
        case Unit():
            return m == ()
        case Byte():
            return isinstance(m, int) and not isinstance(m, bool) and 0 <= m <= 255
        case Prod(left, right):
            return (
                isinstance(m, tuple)
                and len(m) == 2
                and _conforms_args(schema, left, m[0])
                and _conforms_args(schema, right, m[1])
            )
        case Rec():
            return conforms(schema, m)
    raise TypeError(f"not a description: {d!r}")


def fmap_meaning(d: Desc, f: Callable[[Any], Any], m: Any) -> Any:
    """Apply ``f`` at every recursive position of an argument tuple.

    All other positions are passed through unchanged, so the result keeps
    the layout's shape with subtree slots holding whatever ``f`` returned.
    """
    match d:
        case Unit() | Byte():
            return m
        case Prod(left, right):
            return (fmap_meaning(left, f, m[0]), fmap_meaning(right, f, m[1]))
        case Rec():
            return f(m)
    raise TypeError(f"not a description: {d!r}")


def fold(schema: Schema, alg: Algebra[A], t: Tree) -> A:
    """Replace every constructor by ``alg``, bottom up."""
    shape = shape_of(schema, t.tag)
    return alg(t.tag, fmap_meaning(shape, lambda sub: fold(schema, alg, sub), t.args))


# --- the running example: binary trees with a byte at each node ------------

BINARY_TREE = Schema(
    [
        Ctor("leaf", UNIT),
        Ctor("node", Prod(REC, Prod(BYTE, REC))),
    ]
)

LEAF_TAG = 0
NODE_TAG = 1

leaf = Tree(LEAF_TAG)


def node(left: Tree, value: int, right: Tree) -> Tree:
    return Tree(NODE_TAG, (left, (value, right)))


def sum_tree(t: Tree) -> int:
    """Sum of all node bytes, as an unbounded integer."""

    def alg(tag: int, args: Any) -> int:
        if tag == LEAF_TAG:
            return 0
        l, (b, r) = args
        return l + b + r

    return fold(BINARY_TREE, alg, t)


def rightmost_tree(t: Tree) -> int | None:
    """Byte of the deepest node on the rightmost spine; None for a leaf."""
    if t.tag == LEAF_TAG:
        return None
    _, (b, r) = t.args
    deeper = rightmost_tree(r)
    return b if deeper is None else deeper


# --- tree literals ----------------------------------------------------------
#
#   tree := name | "(" name arg* ")"
#
# Arguments appear flattened left to right in layout order; byte values are
# decimal literals.  Unit positions contribute no token.

_LIT_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_-]*|[0-9]+|[()])")


def format_tree(schema: Schema, t: Tree) -> str:
    """Render a tree in the literal syntax, using the schema's names."""
    name = schema.ctors[t.tag].name
    parts: list[str] = []
    _flatten(schema, shape_of(schema, t.tag), t.args, parts)
    if not parts:
        return name
    return "(" + " ".join([name, *parts]) + ")"


def _flatten(schema: Schema, d: Desc, m: Any, out: list[str]) -> None:
    match d:
        case Unit():
            pass
        case Byte():
            out.append(str(m))
        case Prod(left, right):
            _flatten(schema, left, m[0], out)
            _flatten(schema, right, m[1], out)
        case Rec():
            out.append(format_tree(schema, m))


def parse_tree(schema: Schema, text: str) -> Tree:
    """Parse a tree literal against the schema."""
    toks = _LitTokens(text)
    t = _parse_node(schema, toks)
    toks.done()
    return t


class _LitTokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.pending: tuple[str, int] | None = None

    def peek(self) -> tuple[str, int] | None:
        if self.pending is None:
            m = _LIT_TOKEN.match(self.text, self.pos)
            if m is None:
                return None
            self.pending = (m.group(1), m.start(1))
            self.pos = m.end()
        return self.pending

    def next(self, what: str) -> tuple[str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {what}, found end of input", pos=self.pos)
        self.pending = None
        return tok

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected trailing {tok[0]!r}", pos=tok[1])
        if self.text[self.pos :].strip():
            raise ParseError("unexpected trailing input", pos=self.pos)


def _parse_node(schema: Schema, toks: _LitTokens) -> Tree:
    tok, at = toks.next("a tree")
    if tok == "(":
        name, name_at = toks.next("a constructor name")
        tag = _resolve(schema, name, name_at)
        args = _parse_args(schema, shape_of(schema, tag), toks)
        close, close_at = toks.next("')'")
        if close != ")":
            raise ParseError(
                f"constructor {name!r} takes no further arguments, found {close!r}",
                pos=close_at,
            )
        return Tree(tag, args)
    if tok.isdigit():
        raise ParseError(f"expected a tree, found number {tok}", pos=at)
    tag = _resolve(schema, tok, at)
    shape = shape_of(schema, tag)
    if _takes_tokens(shape):
        raise ParseError(f"constructor {tok!r} takes arguments", pos=at)
    return Tree(tag, _parse_args(schema, shape, toks))


def _resolve(schema: Schema, name: str, at: int) -> int:
    for i, ctor in enumerate(schema.ctors):
        if ctor.name == name:
            return i
    raise ParseError(f"unknown constructor {name!r}", pos=at)


def _takes_tokens(d: Desc) -> bool:
    match d:
        case Unit():
            return False
        case Prod(left, right):
            return _takes_tokens(left) or _takes_tokens(right)
    return True


def _parse_args(schema: Schema, d: Desc, toks: _LitTokens) -> Any:
    match d:
        case Unit():
            return ()
        case Byte():
            tok, at = toks.next("a byte value")
            if not tok.isdigit():
                raise ParseError(f"expected a byte value, found {tok!r}", pos=at)
            value = int(tok)
            if value > 255:
                raise ParseError(f"byte value {value} out of range 0-255", pos=at)
            return value
        case Prod(left, right):
            l = _parse_args(schema, left, toks)
            r = _parse_args(schema, right, toks)
            return (l, r)
        case Rec():
            return _parse_node(schema, toks)
    raise TypeError(f"not a description: {d!r}")
