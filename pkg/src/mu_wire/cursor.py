"""Zero-copy reading of serialised trees.

A :class:`Region` is a sealed, bounds-checked byte buffer.  A
:class:`TreeCursor` marks a node (tag position plus subtree byte length);
a :class:`MeaningCursor` marks a node's argument block together with the
offset table decoded from the node.  Every interior size is derived from
the root size, the stored offsets, and the static layout sizes -- the
format stores no end markers.

Reading proceeds in single steps (:func:`poke`), full argument layers
(:func:`layer`, :func:`view`), or all at once (:func:`deserialise`,
:func:`fold_region`).  The point of the offset table is that a consumer
can skip a whole subtree without touching its bytes; see
:func:`rightmost_via_poke` for the access pattern this enables.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Any, Callable, TypeVar

from .codec import check_compat, decode_header
from .desc import Byte, Desc, Prod, Rec, Schema, Unit, offset_count, shape_of, static_size
from .errors import BadTag, TruncatedBuffer
from .value import NODE_TAG, Algebra, Tree

A = TypeVar("A")

_U64 = struct.Struct("<Q")


@dataclass
class ReadStats:
    """Read-access counters for a region; only advance, never reset."""

    reads: int = 0
    bytes_read: int = 0


class Region:
    """An immutable byte buffer with bounds-checked, optionally counted reads."""

    __slots__ = ("data", "stats")

    def __init__(self, data: bytes, track_reads: bool = False):
        self.data = bytes(data)
        self.stats = ReadStats() if track_reads else None

    def __len__(self) -> int:
        return len(self.data)

    def read_byte(self, pos: int) -> int:
        if pos < 0 or pos >= len(self.data):
            raise TruncatedBuffer("byte read past end of region", offset=pos)
        stats = self.stats
        if stats is not None:
            stats.reads += 1
            stats.bytes_read += 1
        return self.data[pos]

    def read_u64(self, pos: int) -> int:
        if pos < 0 or pos + 8 > len(self.data):
            raise TruncatedBuffer("8-byte read past end of region", offset=pos)
        stats = self.stats
        if stats is not None:
            stats.reads += 1
            stats.bytes_read += 8
        return _U64.unpack_from(self.data, pos)[0]

    def read_bytes(self, pos: int, n: int) -> bytes:
        if pos < 0 or n < 0 or pos + n > len(self.data):
            raise TruncatedBuffer(f"{n}-byte read past end of region", offset=pos)
        stats = self.stats
        if stats is not None:
            stats.reads += 1
            stats.bytes_read += n
        return self.data[pos : pos + n]


@dataclass(frozen=True)
class TreeCursor:
    """A node location: region, tag position, and subtree byte length."""

    region: Region
    schema: Schema
    pos: int
    size: int

    def __post_init__(self):
        if self.pos < 0 or self.size < 0 or self.pos + self.size > len(self.region):
            raise TruncatedBuffer(
                f"cursor extent [{self.pos}, {self.pos}+{self.size}) exceeds region",
                offset=self.pos,
            )


@dataclass(frozen=True)
class MeaningCursor:
    """An argument-block location plus the node's decoded offset table."""

    region: Region
    schema: Schema
    shape: Desc
    pos: int
    size: int
    offsets: tuple[int, ...]

    def __post_init__(self):
        if self.pos < 0 or self.size < 0 or self.pos + self.size > len(self.region):
            raise TruncatedBuffer(
                f"cursor extent [{self.pos}, {self.pos}+{self.size}) exceeds region",
                offset=self.pos,
            )


@dataclass(frozen=True)
class UnitSeen:
    pass


@dataclass(frozen=True)
class ByteSeen:
    value: int


@dataclass(frozen=True)
class PairSeen:
    fst: MeaningCursor
    snd: MeaningCursor


@dataclass(frozen=True)
class SubtreeSeen:
    cursor: TreeCursor


PokeResult = UnitSeen | ByteSeen | PairSeen | SubtreeSeen

# A fully expanded argument layer: () at unit positions, ints at byte
# positions, nested 2-tuples for products, TreeCursor at recursive slots.
Layer = Any


def attach(source: bytes | Region, expected: Schema, track_reads: bool = False) -> TreeCursor:
    """Open a serialised buffer as a root cursor, checking its header.

    Read counters (when enabled) start from zero here, so they measure
    only data-block accesses.
    """
    region = source if isinstance(source, Region) else Region(source, track_reads)
    header, start = decode_header(region.data)
    check_compat(expected, header)
    if region.stats is not None:
        region.stats = ReadStats()
    return TreeCursor(region, expected, start, len(region) - start)


def out(c: TreeCursor) -> tuple[int, MeaningCursor]:
    """Expose a node's constructor index and its argument block."""
    if c.size < 1:
        raise TruncatedBuffer("no room for a tag byte in this subtree", offset=c.pos)
    tag = c.region.read_byte(c.pos)
    if tag >= len(c.schema.ctors):
        raise BadTag(
            f"tag {tag:#04x} but the schema has {len(c.schema.ctors)} constructors",
            offset=c.pos,
        )
    shape = shape_of(c.schema, tag)
    n = offset_count(shape)
    if c.size < 1 + 8 * n:
        raise TruncatedBuffer(
            f"subtree of {c.size} bytes cannot hold {n} offsets", offset=c.pos
        )
    offsets = tuple(c.region.read_u64(c.pos + 1 + 8 * k) for k in range(n))
    return tag, MeaningCursor(
        c.region, c.schema, shape, c.pos + 1 + 8 * n, c.size - 1 - 8 * n, offsets
    )


def poke(m: MeaningCursor) -> PokeResult:
    """Unfold an argument block by exactly one layout step."""
    match m.shape:
        case Unit():
            return UnitSeen()
        case Byte():
            if m.size < 1:
                raise TruncatedBuffer("no room for a byte value", offset=m.pos)
            return ByteSeen(m.region.read_byte(m.pos))
        case Rec():
            return SubtreeSeen(TreeCursor(m.region, m.schema, m.pos, m.size))
        case Prod(left, right):
            n_left = offset_count(left, False)
            left_offsets = m.offsets[:n_left]
            size_left = sum(left_offsets) + static_size(left)
            if size_left > m.size:
                raise TruncatedBuffer(
                    f"left component needs {size_left} bytes but only {m.size} remain",
                    offset=m.pos,
                )
            return PairSeen(
                MeaningCursor(m.region, m.schema, left, m.pos, size_left, left_offsets),
                MeaningCursor(
                    m.region,
                    m.schema,
                    right,
                    m.pos + size_left,
                    m.size - size_left,
                    m.offsets[n_left:],
                ),
            )
    raise TypeError(f"not a description: {m.shape!r}")


def layer(m: MeaningCursor) -> Layer:
    """Expand a full argument layer, leaving subtrees as cursors."""
    match poke(m):
        case UnitSeen():
            return ()
        case ByteSeen(value):
            return value
        case SubtreeSeen(cursor):
            return cursor
        case PairSeen(fst, snd):
            return (layer(fst), layer(snd))
    raise AssertionError("unreachable")


def view(c: TreeCursor) -> tuple[int, Layer]:
    """A node's constructor index and fully expanded argument layer."""
    tag, m = out(c)
    return tag, layer(m)


def deserialise(c: TreeCursor) -> Tree:
    """Rebuild the in-memory tree a cursor points at.

    Strict: every subtree must occupy exactly the extent its enclosing
    node's arithmetic assigns it, so a successful result re-serialises to
    the very bytes it was read from.
    """
    tag, m = out(c)
    return Tree(tag, _expand(m.region, c.schema, m.shape, m.pos, m.size, m.offsets))


def _expand(
    region: Region, schema: Schema, d: Desc, pos: int, size: int, offsets: tuple[int, ...]
) -> Any:
    match d:
        case Unit():
            if size != 0:
                raise TruncatedBuffer(
                    f"{size} unaccounted bytes where a unit field was declared", offset=pos
                )
            return ()
        case Byte():
            if size != 1:
                raise TruncatedBuffer(
                    f"byte field occupies {size} bytes instead of 1", offset=pos
                )
            return region.read_byte(pos)
        case Rec():
            return deserialise(TreeCursor(region, schema, pos, size))
        case Prod(left, right):
            n_left = offset_count(left, False)
            left_offsets = offsets[:n_left]
            size_left = sum(left_offsets) + static_size(left)
            if size_left > size:
                raise TruncatedBuffer(
                    f"left component needs {size_left} bytes but only {size} remain",
                    offset=pos,
                )
            return (
                _expand(region, schema, left, pos, size_left, left_offsets),
                _expand(
                    region, schema, right, pos + size_left, size - size_left, offsets[n_left:]
                ),
            )
    raise TypeError(f"not a description: {d!r}")


def fold_region(schema: Schema, alg: Algebra[A], c: TreeCursor) -> A:
    """The generic fold, run directly over the serialised bytes."""
    tag, m = out(c)
    return alg(tag, _fmap_region(lambda sub: fold_region(schema, alg, sub), m))


def _fmap_region(f: Callable[[TreeCursor], Any], m: MeaningCursor) -> Any:
    match poke(m):
        case UnitSeen():
            return ()
        case ByteSeen(value):
            return value
        case SubtreeSeen(cursor):
            return f(cursor)
        case PairSeen(fst, snd):
            return (_fmap_region(f, fst), _fmap_region(f, snd))
    raise AssertionError("unreachable")


def rightmost_via_view(c: TreeCursor) -> int | None:
    """Rightmost node byte of a binary tree, using full layer expansion.

    Reads the stored byte of every node along the rightmost spine.
    """
    tag, lay = view(c)
    if tag != NODE_TAG:
        return None
    _, (b, right) = lay
    deeper = rightmost_via_view(right)
    return b if deeper is None else deeper


def rightmost_via_poke(c: TreeCursor) -> int | None:
    """Rightmost node byte of a binary tree, reading as little as possible.

    Skips every left subtree via its offset and defers each node's byte
    until the recursion proves it is the deepest one, so only a single
    data byte is ever read.
    """
    tag, m = out(c)
    if tag != NODE_TAG:
        return None
    first = poke(m)
    assert isinstance(first, PairSeen)
    rest = poke(first.snd)
    assert isinstance(rest, PairSeen)
    sub = poke(rest.snd)
    assert isinstance(sub, SubtreeSeen)
    deeper = rightmost_via_poke(sub.cursor)
    if deeper is not None:
        return deeper
    got = poke(rest.fst)
    assert isinstance(got, ByteSeen)
    return got.value


def read_stats(c: TreeCursor | MeaningCursor) -> ReadStats:
    """The region's read counters; requires tracking enabled at attach."""
    stats = c.region.stats
    if stats is None:
        raise ValueError("read tracking was not enabled for this region")
    return stats
