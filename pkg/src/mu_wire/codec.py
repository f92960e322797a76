"""Wire codec for the file header.

A file starts with an 8-byte little-endian length, followed by a shape
block of exactly that many bytes: one count byte, then each constructor's
layout encoded recursively (``00`` unit, ``01`` byte, ``02 l r`` product,
``03`` recursive slot).  Constructor names are never stored; compatibility
is purely structural.  Decoding is strict: the shape block must be
consumed exactly.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .desc import BYTE, REC, UNIT, Byte, Ctor, Desc, Prod, Rec, Schema, Unit, validate_schema
from .errors import BadDescTag, SchemaMismatch, TrailingGarbageInHeader, TruncatedBuffer

_U64 = struct.Struct("<Q")

_CODE_UNIT = 0x00
_CODE_BYTE = 0x01
_CODE_PROD = 0x02
_CODE_REC = 0x03


@dataclass(frozen=True)
class Header:
    """Decoded file header: declared shape-block length and the shapes."""

    desc_len: int
    shapes: tuple[Desc, ...]


def encode_desc(d: Desc) -> bytes:
    """Prefix-free encoding of one layout."""
    match d:
        case Unit():
            return bytes([_CODE_UNIT])
        case Byte():
            return bytes([_CODE_BYTE])
        case Rec():
            return bytes([_CODE_REC])
        case Prod(left, right):
            return bytes([_CODE_PROD]) + encode_desc(left) + encode_desc(right)
    raise TypeError(f"not a description: {d!r}")


def decode_desc(data: bytes, pos: int, end: int | None = None) -> tuple[Desc, int]:
    """Decode one layout starting at ``pos``; returns it and the next position."""
    if end is None:
        end = len(data)
    # Iterative so that hostile deeply nested products cannot blow the stack.
    pending: list[list[Desc]] = []
    while True:
        if pos >= end:
            raise TruncatedBuffer("input ends in the middle of a description", offset=pos)
        code = data[pos]
        pos += 1
        if code == _CODE_PROD:
            pending.append([])
            continue
        if code == _CODE_UNIT:
            d: Desc = UNIT
        elif code == _CODE_BYTE:
            d = BYTE
        elif code == _CODE_REC:
            d = REC
        else:
            raise BadDescTag(f"description code {code:#04x} is not in 00-03", offset=pos - 1)
        while True:
            if not pending:
                return d, pos
            pending[-1].append(d)
            if len(pending[-1]) == 1:
                break
            left, right = pending.pop()
            d = Prod(left, right)


def encode_header(schema: Schema) -> bytes:
    """8-byte length prefix + count byte + each constructor's shape."""
    validate_schema(schema)
    block = bytes([len(schema.ctors)]) + b"".join(
        encode_desc(c.shape) for c in schema.ctors
    )
    return _U64.pack(len(block)) + block


def decode_header(data: bytes) -> tuple[Header, int]:
    """Decode the header; returns it and the data block's start position."""
    if len(data) < 8:
        raise TruncatedBuffer(
            f"header needs at least 8 bytes, got {len(data)}", offset=len(data)
        )
    (desc_len,) = _U64.unpack_from(data, 0)
    start = 8 + desc_len
    if start > len(data):
        raise TruncatedBuffer(
            f"header declares {desc_len} shape bytes but only {len(data) - 8} follow",
            offset=len(data),
        )
    if desc_len < 1:
        raise TruncatedBuffer("shape block is empty; a count byte is required", offset=8)
    count = data[8]
    pos = 9
    shapes = []
    for _ in range(count):
        d, pos = decode_desc(data, pos, end=start)
        shapes.append(d)
    if pos != start:
        raise TrailingGarbageInHeader(
            f"shape block declares {desc_len} bytes but decoding consumed {pos - 8}",
            offset=pos,
        )
    return Header(desc_len, tuple(shapes)), start


def check_compat(expected: Schema, header: Header) -> None:
    """Raise unless the header's shapes structurally match the schema's."""
    ours = tuple(c.shape for c in expected.ctors)
    if ours != header.shapes:
        raise SchemaMismatch(
            "buffer holds a different datatype",
            expected=_shapes_bytes(ours),
            actual=_shapes_bytes(header.shapes),
        )


def _shapes_bytes(shapes: tuple[Desc, ...]) -> bytes:
    return bytes([len(shapes)]) + b"".join(encode_desc(d) for d in shapes)


def header_schema(header: Header, prefix: str = "_") -> Schema:
    """A host-side schema with placeholder names for a decoded header."""
    return Schema([Ctor(f"{prefix}{i}", d) for i, d in enumerate(header.shapes)])
