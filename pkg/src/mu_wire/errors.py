"""Exception types raised across the library.

Every error that can be triggered by untrusted bytes derives from
:class:`MuWireError`, so callers can catch one base class at I/O
boundaries.  Errors carry the byte offset they were detected at whenever
one makes sense.
"""

from __future__ import annotations


class MuWireError(Exception):
    """Base class for all errors raised by mu-wire."""

    def __init__(self, message: str, *, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class TruncatedBuffer(MuWireError):
    """A read would cross the end of a buffer, cursor, or declared extent."""


class BadDescTag(MuWireError):
    """A shape encoding contains a code byte outside 0x00-0x03."""


class TrailingGarbageInHeader(TruncatedBuffer):
    """The header's shape block is longer than its decoded content.

    Subclasses :class:`TruncatedBuffer`: both directions of a framing
    mismatch between the declared length and the decoded shapes are
    length-consistency failures.
    """


class SchemaMismatch(MuWireError):
    """A buffer's header describes a different datatype than expected."""

    def __init__(self, message: str, *, expected: bytes, actual: bytes):
        super().__init__(
            f"{message}: expected shapes {expected.hex(' ')}, found {actual.hex(' ')}"
        )
        self.expected = expected
        self.actual = actual


class BadTag(MuWireError):
    """A node's tag byte is not a valid constructor index."""


class UnknownConstructor(MuWireError):
    """A constructor name is not defined by the schema."""


class TooManyConstructors(MuWireError):
    """A schema has more constructors than a one-byte tag can express."""


class DuplicateName(MuWireError):
    """Two constructors in one schema share a name."""


class OffsetSlotUnfilled(MuWireError):
    """A reserved offset slot was never backfilled; indicates a writer bug."""


class PathOutOfRange(MuWireError):
    """A child path step indexes past the node's recursive positions."""


class ParseError(MuWireError):
    """A schema DSL or tree literal failed to parse."""

    def __init__(self, message: str, *, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos
