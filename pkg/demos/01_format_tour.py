"""A guided tour of the wire format, using the running example tree.

We serialise a small binary tree, hexdump the result, and walk through
what every byte means: the self-describing header, the per-node tag,
the 8-byte offset that lets a reader skip the left subtree, and the
in-order data bytes.
"""

from mu_wire import (
    BINARY_TREE,
    decode_header,
    exec_plan,
    format_schema_dsl,
    leaf,
    node,
    plan_tree,
)
from mu_wire.codec import header_schema

example = node(node(node(leaf, 1, leaf), 5, leaf), 10, node(leaf, 20, leaf))

region, root = exec_plan(BINARY_TREE, plan_tree(BINARY_TREE, example))
data = region.data


def hexdump(data):
    for base in range(0, len(data), 16):
        row = data[base : base + 16]
        print(f"{base:08x}: {' '.join(f'{b:02x}' for b in row)}")


print("The tree: node(node(node(leaf,1,leaf), 5, leaf), 10, node(leaf,20,leaf))")
print(f"Serialised, it occupies {len(data)} bytes:\n")
hexdump(data)

header, start = decode_header(data)
print(f"""
Bytes 0-7   little-endian length of the shape block: {header.desc_len}
Bytes 8-14  the shape block itself: {data[8:start].hex(' ')}
            -> count 0x{data[8]:02x}, then one layout per constructor
            -> {format_schema_dsl(header_schema(header))}
Byte  0x0f  root tag 0x{data[0x0f]:02x} -> the second constructor (a node)
Bytes 0x10+ the root's offset table: one 8-byte entry per non-rightmost
            subtree. Value {int.from_bytes(data[0x10:0x18], 'little')}: the
            left subtree occupies that many bytes, so a reader can hop
            straight to the stored byte or the right subtree.
""")

print(f"Root data byte lives at 0x{0x18 + 23:02x}: 0x{data[0x18 + 23]:02x} = 10")
print("A leaf is the single byte 00; nothing else is stored for it.")
print("No absolute addresses anywhere: any subtree's bytes are position-independent.")
