"""Producing new buffers from old ones: copy, swap, map, extract.

Because offsets are relative sizes rather than absolute addresses, a
subtree's bytes mean the same thing anywhere.  Copying is therefore one
raw read, swapping two children moves their byte ranges verbatim, and a
subtree can be written out as a standalone file by pairing it with the
original header.
"""

import tempfile
from pathlib import Path

from mu_wire import (
    BINARY_TREE,
    attach,
    deserialise,
    exec_plan,
    format_tree,
    leaf,
    map_tree_bytes,
    node,
    plan_copy,
    plan_tree,
    swap_tree,
    view,
    write_to_file,
)

example = node(node(node(leaf, 1, leaf), 5, leaf), 10, node(leaf, 20, leaf))
region, root = exec_plan(BINARY_TREE, plan_tree(BINARY_TREE, example))
show = lambda cursor: format_tree(BINARY_TREE, deserialise(cursor))

print("source:  ", show(root))

copy_region, copied = exec_plan(BINARY_TREE, plan_copy(root))
print("copy:    ", show(copied), f"(byte-identical: {copy_region.data == region.data})")

_, swapped = exec_plan(BINARY_TREE, swap_tree(root))
print("swap:    ", show(swapped))

_, bumped = exec_plan(BINARY_TREE, map_tree_bytes(lambda b: (b + 1) % 256, root))
print("map +1:  ", show(bumped))

# Slice out the right child and write it as its own file.
tag, (left_cursor, (b, right_cursor)) = view(root)
with tempfile.TemporaryDirectory() as tmp:
    out_path = Path(tmp) / "right.bin"
    write_to_file(out_path, right_cursor)
    data = out_path.read_bytes()
    reopened = attach(data, BINARY_TREE)
    print(f"extract: {show(reopened)} ({len(data)} bytes on disk: "
          f"15-byte header + {right_cursor.size}-byte subtree)")
