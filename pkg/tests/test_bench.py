import pytest

from mu_wire import BINARY_TREE, exec_plan, fold, leaf, plan_tree
from mu_wire.bench import (
    CSV_HEADER,
    BenchRow,
    BenchSpec,
    gen_full_tree,
    rows_to_csv,
    run_bench,
    sum_region,
    write_csv,
)


def count_nodes(t):
    return fold(BINARY_TREE, lambda tag, a: 1 + a[0] + a[1][1] if tag else 0, t)


def count_leaves(t):
    return fold(BINARY_TREE, lambda tag, a: a[0] + a[1][1] if tag else 1, t)


def test_gen_full_tree_shape():
    assert gen_full_tree(0) == leaf
    t2 = gen_full_tree(2)
    assert count_nodes(t2) == 3
    assert count_leaves(t2) == 4


def test_gen_full_tree_is_deterministic():
    assert gen_full_tree(5) == gen_full_tree(5)


def test_serialised_size_closed_form():
    # The writer is the size oracle: a full tree of depth d occupies
    # 10 bytes per node (tag + one offset + data byte) plus 1 per leaf.
    for d in range(9):
        _, root = exec_plan(BINARY_TREE, plan_tree(BINARY_TREE, gen_full_tree(d)))
        assert root.size == 11 * 2**d - 10


def test_bench_spec_validation():
    with pytest.raises(ValueError):
        BenchSpec("nope", (4,))
    with pytest.raises(ValueError):
        BenchSpec("sum", ())
    with pytest.raises(ValueError):
        BenchSpec("sum", (0,))
    with pytest.raises(ValueError):
        BenchSpec("sum", (4,), repetitions=0)


@pytest.mark.parametrize("experiment", ["sum", "rightmost", "copy"])
def test_run_bench_rows(experiment):
    rows = run_bench(BenchSpec(experiment, (2, 4), repetitions=2))
    assert [r.size for r in rows] == [2, 4]
    for row in rows:
        assert row.serialised > 0 and row.deserialised > 0


def test_csv_format(tmp_path):
    rows = [BenchRow(4, 100, 200), BenchRow(8, 300, 400)]
    csv = rows_to_csv(rows)
    lines = csv.splitlines()
    assert lines[0] == CSV_HEADER == "size,serialised,deserialised"
    assert lines[1] == "4,100,200"
    path = tmp_path / "out.csv"
    write_csv(rows, path)
    assert path.read_text() == csv


def test_sum_region_agrees_with_fold():
    t = gen_full_tree(4)
    _, root = exec_plan(BINARY_TREE, plan_tree(BINARY_TREE, t))
    assert sum_region(root) == sum(b * n for b, n in [(4, 1), (3, 2), (2, 4), (1, 8)])
