"""Timing experiments: buffer-resident operations vs deserialise-then-pure.

Three experiments over full binary trees of configurable depth:

* ``sum`` -- touches every node either way, so the two sides should stay
  within the same order of magnitude;
* ``rightmost`` -- the cursor side skips every left subtree via stored
  offsets while the pure side must rebuild the whole tree first;
* ``copy`` -- raw-byte subtree copy vs deserialise-and-re-serialise.

Results are reported as mean nanoseconds per run in CSV rows
``size,serialised,deserialised``.  Absolute numbers are host-dependent;
only the trends are meaningful.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

from .cursor import TreeCursor, deserialise, fold_region, rightmost_via_poke
from .value import BINARY_TREE, LEAF_TAG, Tree, leaf, node, rightmost_tree, sum_tree
from .writer import exec_plan, plan_copy, plan_tree

EXPERIMENTS = ("sum", "rightmost", "copy")

CSV_HEADER = "size,serialised,deserialised"


@dataclass(frozen=True)
class BenchSpec:
    """One experiment over a sequence of depths, averaged over repetitions."""

    experiment: str
    depths: tuple[int, ...]
    repetitions: int = 20

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; pick from {EXPERIMENTS}")
        if not self.depths or any(d < 1 for d in self.depths):
            raise ValueError("depths must be a non-empty sequence of naturals >= 1")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


@dataclass(frozen=True)
class BenchRow:
    size: int
    serialised: int
    deserialised: int


def gen_full_tree(depth: int) -> Tree:
    """A complete binary tree; each node stores its height mod 256.

    Subtrees at equal height are shared, so the in-memory value is small
    even though its serialised form is exponential in the depth.
    """
    t = leaf
    for level in range(1, depth + 1):
        t = node(t, level % 256, t)
    return t


def _sum_alg(tag: int, args: Any) -> int:
    if tag == LEAF_TAG:
        return 0
    l, (b, r) = args
    return l + b + r


def sum_region(c: TreeCursor) -> int:
    """Sum of all node bytes, computed directly over the buffer."""
    return fold_region(BINARY_TREE, _sum_alg, c)


def _timed(fn: Callable[[], Any], reps: int) -> int:
    total = 0
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        total += time.perf_counter_ns() - t0
    return total // reps


def run_bench(spec: BenchSpec) -> list[BenchRow]:
    """Run one experiment; results are oracle-checked before being timed."""
    rows = []
    for depth in spec.depths:
        t = gen_full_tree(depth)
        _, root = exec_plan(BINARY_TREE, plan_tree(BINARY_TREE, t))

        if spec.experiment == "sum":
            expected = sum_tree(t)
            serialised = lambda: sum_region(root)
            deserialised = lambda: sum_tree(deserialise(root))
        elif spec.experiment == "rightmost":
            expected = rightmost_tree(t)
            serialised = lambda: rightmost_via_poke(root)
            deserialised = lambda: rightmost_tree(deserialise(root))
        else:
            expected = root.region.data
            serialised = lambda: exec_plan(BINARY_TREE, plan_copy(root))[0].data
            deserialised = lambda: exec_plan(
                BINARY_TREE, plan_tree(BINARY_TREE, deserialise(root))
            )[0].data

        # Correctness gate doubles as the warm-up run, excluded from means.
        for side, fn in (("serialised", serialised), ("deserialised", deserialised)):
            got = fn()
            if got != expected:
                raise AssertionError(
                    f"{spec.experiment} ({side}) disagrees with the pure oracle at "
                    f"depth {depth}: {got!r} != {expected!r}"
                )

        rows.append(
            BenchRow(
                size=depth,
                serialised=_timed(serialised, spec.repetitions),
                deserialised=_timed(deserialised, spec.repetitions),
            )
        )
    return rows


def rows_to_csv(rows: Sequence[BenchRow]) -> str:
    lines = [CSV_HEADER]
    lines += [f"{r.size},{r.serialised},{r.deserialised}" for r in rows]
    return "\n".join(lines) + "\n"


def write_csv(rows: Sequence[BenchRow], path: str | Path) -> None:
    Path(path).write_text(rows_to_csv(rows))
