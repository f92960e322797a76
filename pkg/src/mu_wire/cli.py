"""``mu-wire``: inspect, validate, dump, encode, extract, and transform files.

A batch tool over the serialised-tree file format.  Schemas are supplied
as DSL text (or ``@file`` to read one from disk) because constructor
names live host-side only; ``inspect`` needs no schema and prints
placeholder names.  The ``demo`` and ``bench`` subcommands hard-wire the
binary-tree schema.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench as bench_mod
from .codec import decode_header, header_schema
from .cursor import (
    MeaningCursor,
    PairSeen,
    SubtreeSeen,
    TreeCursor,
    attach,
    deserialise,
    out,
    poke,
    rightmost_via_poke,
    rightmost_via_view,
)
from .desc import Schema, format_schema_dsl, parse_schema_dsl
from .errors import MuWireError, PathOutOfRange
from .value import BINARY_TREE, format_tree, parse_tree
from .writer import exec_plan, map_tree_bytes, plan_copy, plan_tree, swap_tree, write_to_file

DEMOS = ("sum", "rightmost-view", "rightmost-poke", "copy", "swap", "map-incr")


def _load_schema(spec: str) -> Schema:
    if spec.startswith("@"):
        spec = Path(spec[1:]).read_text()
    return parse_schema_dsl(spec)


def _parse_child_path(text: str) -> list[int]:
    if not text.strip():
        return []
    steps = []
    for part in text.split(","):
        part = part.strip()
        if not part.isdigit():
            raise PathOutOfRange(f"path step {part!r} is not a natural number")
        steps.append(int(part))
    return steps


def _parse_depths(text: str) -> tuple[int, ...]:
    text = text.strip()
    if ".." in text:
        lo, _, hi = text.partition("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(p) for p in text.split(","))


def _rec_children(m: MeaningCursor) -> list[TreeCursor]:
    """Subtree cursors of one node, left to right."""
    found: list[TreeCursor] = []

    def go(mm: MeaningCursor) -> None:
        match poke(mm):
            case SubtreeSeen(cursor):
                found.append(cursor)
            case PairSeen(fst, snd):
                go(fst)
                go(snd)
            case _:
                pass

    go(m)
    return found


def _navigate(c: TreeCursor, steps: list[int]) -> TreeCursor:
    for i, k in enumerate(steps):
        _, m = out(c)
        children = _rec_children(m)
        if k >= len(children):
            raise PathOutOfRange(
                f"path step {i} asks for child {k} but the node has "
                f"{len(children)} recursive positions"
            )
        c = children[k]
    return c


def _cmd_inspect(args: argparse.Namespace) -> int:
    data = Path(args.file).read_bytes()
    header, start = decode_header(data)
    dsl = format_schema_dsl(header_schema(header))
    print(f"desc_len={header.desc_len}; {dsl}; data={len(data) - start}B")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    schema = _load_schema(args.schema)
    attach(Path(args.file).read_bytes(), schema)
    print("ok")
    return 0


def _cmd_dump(args: argparse.Namespace) -> int:
    schema = _load_schema(args.schema)
    root = attach(Path(args.file).read_bytes(), schema)
    print(format_tree(schema, deserialise(root)))
    return 0


def _cmd_encode(args: argparse.Namespace) -> int:
    schema = _load_schema(args.schema)
    t = parse_tree(schema, args.literal)
    _, root = exec_plan(schema, plan_tree(schema, t))
    write_to_file(args.out, root)
    return 0


def _cmd_extract(args: argparse.Namespace) -> int:
    schema = _load_schema(args.schema)
    root = attach(Path(args.file).read_bytes(), schema)
    target = _navigate(root, _parse_child_path(args.path))
    write_to_file(args.out, target)
    return 0


def _cmd_demo(args: argparse.Namespace) -> int:
    root = attach(Path(args.file).read_bytes(), BINARY_TREE)
    name = args.name
    if name == "sum":
        print(bench_mod.sum_region(root))
        return 0
    if name in ("rightmost-view", "rightmost-poke"):
        fn = rightmost_via_view if name == "rightmost-view" else rightmost_via_poke
        got = fn(root)
        print("absent" if got is None else got)
        return 0
    if args.out is None:
        raise MuWireError(f"demo {name!r} writes a file; --out is required")
    if name == "copy":
        plan = plan_copy(root)
    elif name == "swap":
        plan = swap_tree(root)
    else:
        plan = map_tree_bytes(lambda b: (b + 1) % 256, root)
    _, produced = exec_plan(BINARY_TREE, plan)
    write_to_file(args.out, produced)
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    spec = bench_mod.BenchSpec(
        experiment=args.exp,
        depths=_parse_depths(args.depths),
        repetitions=args.reps,
    )
    rows = bench_mod.run_bench(spec)
    csv = bench_mod.rows_to_csv(rows)
    if args.out is None:
        print(csv, end="")
    else:
        Path(args.out).write_text(csv)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mu-wire",
        description="Process serialised algebraic datatypes without deserialising them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", help="print a file's header: shapes and data size")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_inspect)

    p = sub.add_parser("validate", help="check a file against a schema")
    p.add_argument("file")
    p.add_argument("--schema", required=True, help="schema DSL text, or @file")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("dump", help="print a file's tree as a literal")
    p.add_argument("file")
    p.add_argument("--schema", required=True, help="schema DSL text, or @file")
    p.set_defaults(fn=_cmd_dump)

    p = sub.add_parser("encode", help="serialise a tree literal to a file")
    p.add_argument("literal")
    p.add_argument("--schema", required=True, help="schema DSL text, or @file")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_encode)

    p = sub.add_parser("extract", help="write one subtree as a standalone file")
    p.add_argument("file")
    p.add_argument("--schema", required=True, help="schema DSL text, or @file")
    p.add_argument("--path", default="", help="child indices, e.g. 1,0 (empty = root)")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_extract)

    p = sub.add_parser("demo", help="run a binary-tree operation on a file")
    p.add_argument("name", choices=DEMOS)
    p.add_argument("file")
    p.add_argument("--out", help="output file for copy/swap/map-incr")
    p.set_defaults(fn=_cmd_demo)

    p = sub.add_parser("bench", help="time buffer-resident vs deserialise-then-pure")
    p.add_argument("--exp", required=True, choices=bench_mod.EXPERIMENTS)
    p.add_argument("--depths", default="4..20", help="range a..b or comma list")
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(fn=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (MuWireError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
