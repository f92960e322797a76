"""Reading pieces of a tree straight out of the buffer.

A cursor is a (position, size) window into the sealed bytes.  `out`
exposes a node's constructor and offset table; `poke` unfolds the
argument layout one step at a time; `view` gives a whole layer at once.
Nothing is copied until you ask for it, and whole subtrees can be
skipped using the offset table -- watch the read counters.
"""

from mu_wire import (
    BINARY_TREE,
    attach,
    exec_plan,
    leaf,
    node,
    plan_tree,
    read_stats,
    rightmost_via_poke,
    rightmost_via_view,
    view,
)
from mu_wire.bench import gen_full_tree

example = node(node(node(leaf, 1, leaf), 5, leaf), 10, node(leaf, 20, leaf))
region, _ = exec_plan(BINARY_TREE, plan_tree(BINARY_TREE, example))

# Re-open the bytes the way a reader would: check the header, get a root cursor.
root = attach(region.data, BINARY_TREE, track_reads=True)
print(f"Root cursor: pos={root.pos} size={root.size}")

tag, (left, (b, right)) = view(root)
print(f"view(root) -> constructor {tag} with byte {b}")
print(f"  left child:  cursor of {left.size} bytes (untouched)")
print(f"  right child: cursor of {right.size} bytes (untouched)")
print(f"Bytes read so far: {read_stats(root).bytes_read} of {root.size}\n")

# The payoff: fetching the rightmost node's byte from a huge tree.
big = gen_full_tree(16)
big_region, _ = exec_plan(BINARY_TREE, plan_tree(BINARY_TREE, big))
cursor = attach(big_region.data, BINARY_TREE, track_reads=True)

value = rightmost_via_poke(cursor)
stats = read_stats(cursor)
print(f"Depth-16 full tree: {cursor.size} serialised bytes")
print(f"rightmost_via_poke -> {value}, after reading only {stats.bytes_read} bytes")

cursor2 = attach(big_region.data, BINARY_TREE, track_reads=True)
value2 = rightmost_via_view(cursor2)
print(
    f"rightmost_via_view -> {value2}, reading {read_stats(cursor2).bytes_read} bytes "
    "(it also deserialises each spine byte)"
)
print("Either way, the left subtrees -- almost the whole buffer -- were skipped.")
