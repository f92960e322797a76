"""The universe of datatype descriptions.

A :class:`Desc` spells out the argument layout of a single constructor as
an arbitrarily nested product of unit, one-byte, and recursive-subtree
positions.  A :class:`Schema` is an ordered choice of named constructors
and defines one algebraic datatype.

Two derived quantities drive the wire format:

* :func:`static_size` — how many bytes of non-subtree data a layout
  stores, known from the description alone;
* :func:`offset_count` — how many 8-byte skip offsets a node must store.
  A recursive position that is the rightmost field of its constructor
  needs no offset, because there is nothing after it to skip to.

The module also provides the textual schema DSL used by the CLI, e.g.
``mu { leaf: none, node: (rec * (byte * rec)) }``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DuplicateName, ParseError, TooManyConstructors, UnknownConstructor

MAX_CTORS = 255  # the constructor count and the node tag are single bytes


class Desc:
    """Base class of the four layout constructors."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Unit(Desc):
    """A field storing nothing."""


@dataclass(frozen=True, slots=True)
class Byte(Desc):
    """A field storing exactly one byte."""


@dataclass(frozen=True, slots=True)
class Prod(Desc):
    """Two layouts stored one after the other."""

    left: Desc
    right: Desc


@dataclass(frozen=True, slots=True)
class Rec(Desc):
    """A recursive subtree position."""


UNIT = Unit()
BYTE = Byte()
REC = Rec()


@dataclass(frozen=True, slots=True)
class Ctor:
    """A named constructor together with its argument layout."""

    name: str
    shape: Desc


@dataclass(frozen=True)
class Schema:
    """An ordered sequence of constructors defining one datatype."""

    ctors: tuple[Ctor, ...]

    def __init__(self, ctors: Sequence[Ctor]):
        object.__setattr__(self, "ctors", tuple(ctors))

    def __len__(self) -> int:
        return len(self.ctors)


@lru_cache(maxsize=None)
def static_size(d: Desc) -> int:
    """Bytes of non-subtree data stored by a layout."""
    match d:
        case Unit() | Rec():
            return 0
        case Byte():
            return 1
        case Prod(left, right):
            return static_size(left) + static_size(right)
    raise TypeError(f"not a description: {d!r}")


@lru_cache(maxsize=None)
def offset_count(d: Desc, rightmost: bool = True) -> int:
    """Number of 8-byte offsets a node stores for this layout.

    ``rightmost`` says whether the layout sits in the rightmost branch of
    the whole constructor; the top-level call leaves it True.
    """
    match d:
        case Unit() | Byte():
            return 0
        case Rec():
            return 0 if rightmost else 1
        case Prod(left, right):
            return offset_count(left, False) + offset_count(right, rightmost)
    raise TypeError(f"not a description: {d!r}")


def index_of(schema: Schema, name: str) -> int:
    """Resolve a constructor name to its index."""
    for i, ctor in enumerate(schema.ctors):
        if ctor.name == name:
            return i
    raise UnknownConstructor(f"no constructor named {name!r} in schema")


def shape_of(schema: Schema, index: int) -> Desc:
    """The argument layout of the constructor at ``index``."""
    return schema.ctors[index].shape


def validate_schema(schema: Schema) -> None:
    """Raise unless the schema can be put on the wire."""
    if len(schema.ctors) > MAX_CTORS:
        raise TooManyConstructors(
            f"{len(schema.ctors)} constructors; the tag byte allows at most {MAX_CTORS}"
        )
    seen: set[str] = set()
    for ctor in schema.ctors:
        if not ctor.name:
            raise DuplicateName("constructor names must be non-empty")
        if ctor.name in seen:
            raise DuplicateName(f"constructor name {ctor.name!r} appears twice")
        seen.add(ctor.name)


# --- textual DSL -----------------------------------------------------------
#
#   schema := "mu" "{" [ctor ("," ctor)*] "}"
#   ctor   := name ":" desc
#   desc   := "none" | "byte" | "rec" | "(" desc "*" desc ")"

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_-]*|[{}(),:*])")


@dataclass
class _Tokens:
    text: str
    pos: int = 0
    pending: tuple[str, int] | None = None

    def peek(self) -> tuple[str, int] | None:
        if self.pending is None:
            m = _TOKEN.match(self.text, self.pos)
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

    def expect(self, literal: str) -> None:
        tok, at = self.next(repr(literal))
        if tok != literal:
            raise ParseError(f"expected {literal!r}, found {tok!r}", pos=at)

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected trailing {tok[0]!r}", pos=tok[1])
        rest = self.text[self.pos :]
        if rest.strip():
            raise ParseError("unexpected trailing input", pos=self.pos)


def _parse_desc(toks: _Tokens) -> Desc:
    tok, at = toks.next("a description")
    if tok == "none":
        return UNIT
    if tok == "byte":
        return BYTE
    if tok == "rec":
        return REC
    if tok == "(":
        left = _parse_desc(toks)
        toks.expect("*")
        right = _parse_desc(toks)
        toks.expect(")")
        return Prod(left, right)
    raise ParseError(f"expected a description, found {tok!r}", pos=at)


def parse_schema_dsl(text: str) -> Schema:
    """Parse ``mu { name: desc, ... }`` into a Schema."""
    toks = _Tokens(text)
    toks.expect("mu")
    toks.expect("{")
    ctors: list[Ctor] = []
    tok = toks.peek()
    if tok is not None and tok[0] != "}":
        while True:
            name, at = toks.next("a constructor name")
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_-]*", name):
                raise ParseError(f"bad constructor name {name!r}", pos=at)
            toks.expect(":")
            ctors.append(Ctor(name, _parse_desc(toks)))
            tok, at = toks.next("',' or '}'")
            if tok == "}":
                break
            if tok != ",":
                raise ParseError(f"expected ',' or '}}', found {tok!r}", pos=at)
    else:
        toks.expect("}")
    toks.done()
    schema = Schema(ctors)
    validate_schema(schema)
    return schema


def format_desc_dsl(d: Desc) -> str:
    """Render a description in the DSL's concrete syntax."""
    match d:
        case Unit():
            return "none"
        case Byte():
            return "byte"
        case Rec():
            return "rec"
        case Prod(left, right):
            return f"({format_desc_dsl(left)} * {format_desc_dsl(right)})"
    raise TypeError(f"not a description: {d!r}")


def format_schema_dsl(schema: Schema) -> str:
    """Render a Schema in the DSL's concrete syntax."""
    if not schema.ctors:
        return "mu {}"
    body = ", ".join(f"{c.name}: {format_desc_dsl(c.shape)}" for c in schema.ctors)
    return f"mu {{ {body} }}"
