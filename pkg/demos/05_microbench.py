"""A small run of the three timing experiments.

Each experiment compares an operation running directly over the buffer
against deserialising first and running its pure counterpart.  `sum`
must visit everything either way; `rightmost` lets the buffer side skip
left subtrees; `copy` pits one raw byte copy against a full rebuild.

The CLI equivalent:  mu-wire bench --exp rightmost --depths 4..12 --reps 5
"""

from mu_wire.bench import BenchSpec, rows_to_csv, run_bench

for experiment in ("sum", "rightmost", "copy"):
    rows = run_bench(BenchSpec(experiment, depths=(4, 6, 8, 10, 12), repetitions=5))
    print(f"# {experiment}: mean ns per run")
    print(rows_to_csv(rows))
    deepest = rows[-1]
    ratio = deepest.deserialised / max(deepest.serialised, 1)
    print(f"depth {deepest.size}: deserialise side takes {ratio:.1f}x the buffer side's time\n")
