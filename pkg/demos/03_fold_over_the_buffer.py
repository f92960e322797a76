"""The generic fold, evaluated without building the tree in memory.

An algebra says what each constructor means once its subtree slots hold
results.  `fold` runs it over an in-memory tree; `fold_region` runs the
same algebra directly over the serialised bytes.  They agree on every
input -- the pure fold is the specification, the buffer fold is the
fast path.
"""

import random

from mu_wire import (
    BINARY_TREE,
    Tree,
    deserialise,
    exec_plan,
    fold,
    fold_region,
    leaf,
    node,
    plan_tree,
)


def random_tree(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        return leaf
    return node(random_tree(rng, depth - 1), rng.randrange(256), random_tree(rng, depth - 1))


def sum_alg(tag, args):
    if tag == 0:
        return 0
    l, (b, r) = args
    return l + b + r


def size_alg(tag, args):
    if tag == 0:
        return 1
    l, (_, r) = args
    return 1 + l + r


def depth_alg(tag, args):
    if tag == 0:
        return 0
    l, (_, r) = args
    return 1 + max(l, r)


rng = random.Random(9)
t = random_tree(rng, 6)
region, root = exec_plan(BINARY_TREE, plan_tree(BINARY_TREE, t))
print(f"A random tree, serialised into {root.size} bytes.\n")

for name, alg in [("sum", sum_alg), ("size", size_alg), ("depth", depth_alg)]:
    pure = fold(BINARY_TREE, alg, t)
    buffered = fold_region(BINARY_TREE, alg, root)
    print(f"{name:>6}: over buffer = {buffered:>5}   pure fold = {pure:>5}   agree = {pure == buffered}")

# The rebuild algebra shows the fold over bytes subsumes deserialisation.
rebuilt = fold_region(BINARY_TREE, Tree, root)
print(f"\nrebuild algebra == deserialise: {rebuilt == deserialise(root)}")
