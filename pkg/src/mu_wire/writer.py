"""Building serialised trees.

A :class:`BuildPlan` is a deferred write: applied to a :class:`ByteSink`
at a position, it emits one subtree's bytes and reports the end position.
Node emission reserves the offset table up front, writes the arguments,
and backfills each non-rightmost subtree's byte length once it is known.

Plans may read from other, already sealed regions while they run -- that
is how :func:`plan_copy`, :func:`map_tree_bytes` and :func:`swap_tree`
interleave reading a source buffer with writing the target -- but never
from the sink they are writing into.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from .codec import decode_header, encode_header
from .cursor import Region, TreeCursor, view
from .desc import Byte, Desc, Prod, Rec, Schema, Unit, offset_count, shape_of
from .errors import OffsetSlotUnfilled
from .value import BINARY_TREE, LEAF_TAG, NODE_TAG, Tree

_U64 = struct.Struct("<Q")


class ByteSink:
    """A growable byte buffer, append-only except for offset-slot backfill.

    Owned by one builder at a time; sealing yields immutable bytes that
    may then be shared freely.
    """

    __slots__ = ("_buf", "_pending")

    def __init__(self):
        self._buf = bytearray()
        self._pending: set[int] = set()

    def tell(self) -> int:
        return len(self._buf)

    def write_byte(self, value: int) -> None:
        if not 0 <= value <= 255:
            raise ValueError(f"byte value {value} out of range 0-255")
        self._buf.append(value)

    def write_bytes(self, data: bytes) -> None:
        self._buf += data

    def reserve_offset_slot(self) -> int:
        """Append an 8-byte placeholder; returns its position for backfill."""
        pos = len(self._buf)
        self._buf += b"\x00" * 8
        self._pending.add(pos)
        return pos

    def fill_offset_slot(self, slot: int, value: int) -> None:
        """Backfill a reserved slot, exactly once."""
        if slot not in self._pending:
            raise ValueError(f"position {slot} is not an unfilled offset slot")
        _U64.pack_into(self._buf, slot, value)
        self._pending.remove(slot)

    def seal(self) -> bytes:
        if self._pending:
            raise OffsetSlotUnfilled(
                f"{len(self._pending)} offset slot(s) never backfilled: "
                f"{sorted(self._pending)[:8]}"
            )
        return bytes(self._buf)


@dataclass(frozen=True)
class BuildPlan:
    """Deferred write action: (sink, start position) -> end position."""

    _emit: Callable[[ByteSink, int], int]

    def run(self, sink: ByteSink, start: int) -> int:
        if start != sink.tell():
            raise ValueError(
                f"plan must run at the sink's write position {sink.tell()}, got {start}"
            )
        end = self._emit(sink, start)
        if end != sink.tell():
            raise ValueError("plan reported an end position it did not write up to")
        return end


def _emit_node(
    sink: ByteSink,
    schema: Schema,
    index: int,
    args: Any,
    emit_sub: Callable[[ByteSink, Any], None],
) -> int:
    """Emit one node: tag, reserved offsets, arguments, then backfill."""
    ctors = schema.ctors
    if not 0 <= index < len(ctors):
        raise ValueError(f"constructor index {index} out of range for schema")
    shape = shape_of(schema, index)
    sink.write_byte(index)
    slots = [sink.reserve_offset_slot() for _ in range(offset_count(shape))]
    slot_iter = iter(slots)

    def walk(d: Desc, a: Any, rightmost: bool) -> None:
        match d:
            case Unit():
                if a != ():
                    raise ValueError(
                        f"constructor {ctors[index].name!r}: expected () at a unit "
                        f"position, got {a!r}"
                    )
            case Byte():
                if not isinstance(a, int) or isinstance(a, bool):
                    raise ValueError(
                        f"constructor {ctors[index].name!r}: expected a byte, got {a!r}"
                    )
                sink.write_byte(a)
            case Prod(left, right):
                if not isinstance(a, tuple) or len(a) != 2:
                    raise ValueError(
                        f"constructor {ctors[index].name!r}: expected a pair, got {a!r}"
                    )
                walk(left, a[0], False)
                walk(right, a[1], rightmost)
            case Rec():
                sub_start = sink.tell()
                emit_sub(sink, a)
                if not rightmost:
                    sink.fill_offset_slot(next(slot_iter), sink.tell() - sub_start)
            case _:
                raise TypeError(f"not a description: {d!r}")

    walk(shape, args, True)
    return sink.tell()


def plan_node(schema: Schema, index: int, args: Any) -> BuildPlan:
    """Plan one node whose recursive positions hold :class:`BuildPlan` values."""

    def emit_sub(sink: ByteSink, sub: Any) -> None:
        if not isinstance(sub, BuildPlan):
            raise ValueError(f"expected a BuildPlan at a recursive position, got {sub!r}")
        sub.run(sink, sink.tell())

    return BuildPlan(lambda sink, start: _emit_node(sink, schema, index, args, emit_sub))


def plan_tree(schema: Schema, t: Tree) -> BuildPlan:
    """Plan a whole in-memory tree, node by node."""

    def emit_sub(sink: ByteSink, sub: Any) -> None:
        if not isinstance(sub, Tree):
            raise ValueError(f"expected a subtree at a recursive position, got {sub!r}")
        _emit_node(sink, schema, sub.tag, sub.args, emit_sub)

    def emit(sink: ByteSink, start: int) -> int:
        if not isinstance(t, Tree):
            raise ValueError(f"expected a Tree, got {t!r}")
        return _emit_node(sink, schema, t.tag, t.args, emit_sub)

    return BuildPlan(emit)


def plan_copy(src: TreeCursor) -> BuildPlan:
    """Plan a verbatim copy of the subtree at ``src``.

    One raw read of the subtree's extent; the structure is never
    inspected.  Offsets are relative sizes, so the bytes mean the same
    thing at any position in the target.
    """

    def emit(sink: ByteSink, start: int) -> int:
        sink.write_bytes(src.region.read_bytes(src.pos, src.size))
        return sink.tell()

    return BuildPlan(emit)


def exec_plan(
    schema: Schema, plan: BuildPlan, track_reads: bool = False
) -> tuple[Region, TreeCursor]:
    """Run a plan after the schema's header; returns the sealed region and root."""
    sink = ByteSink()
    sink.write_bytes(encode_header(schema))
    start = sink.tell()
    plan.run(sink, start)
    region = Region(sink.seal(), track_reads)
    return region, TreeCursor(region, schema, start, len(region) - start)


def write_to_file(path: str | Path, c: TreeCursor) -> None:
    """Write the subtree at ``c`` as a standalone file.

    The output is the region's own header followed by exactly the
    subtree's bytes; when ``c`` spans the whole data block that is the
    region verbatim.
    """
    _, start = decode_header(c.region.data)
    if c.pos == start and c.size == len(c.region) - start:
        payload = c.region.read_bytes(0, len(c.region))
    else:
        payload = c.region.read_bytes(0, start) + c.region.read_bytes(c.pos, c.size)
    Path(path).write_bytes(payload)


def map_tree_bytes(f: Callable[[int], int], src: TreeCursor) -> BuildPlan:
    """Plan the binary tree at ``src`` with ``f`` applied to every node byte.

    The source is read lazily while the plan runs; ``f`` must return a
    value in 0..255.
    """

    def emit(sink: ByteSink, start: int) -> int:
        tag, lay = view(src)
        if tag == LEAF_TAG:
            return plan_node(BINARY_TREE, LEAF_TAG, ()).run(sink, start)
        left, (b, right) = lay
        plan = plan_node(
            BINARY_TREE,
            NODE_TAG,
            (map_tree_bytes(f, left), (f(b), map_tree_bytes(f, right))),
        )
        return plan.run(sink, start)

    return BuildPlan(emit)


def swap_tree(src: TreeCursor) -> BuildPlan:
    """Plan the binary tree at ``src`` with its root's children exchanged.

    Both children are moved as raw byte copies; a leaf stays a leaf.
    """

    def emit(sink: ByteSink, start: int) -> int:
        tag, lay = view(src)
        if tag == LEAF_TAG:
            return plan_node(BINARY_TREE, LEAF_TAG, ()).run(sink, start)
        left, (b, right) = lay
        plan = plan_node(BINARY_TREE, NODE_TAG, (plan_copy(right), (b, plan_copy(left))))
        return plan.run(sink, start)

    return BuildPlan(emit)
