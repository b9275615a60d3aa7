"""A small benchmark grid comparing HS, RRS and the sampled greedy baseline.

Writes plot-ready CSV rows (one per run plus a mean row per cell) and prints
the mean rows.  The same grid can be run from the command line with
``regretset bench --spec grid.json --out bench.csv``.
"""

import sys

from regretset.bench import GridSpec, bench_grid, records_to_csv

spec = GridSpec.from_dict({
    "datasets": [
        {"kind": "sphere", "d": 3, "n": 500, "seed": 1},
        {"kind": "anticor", "d": 4, "n": 1000, "sigma": 0.1, "seed": 1},
    ],
    "algorithms": ["hs", "rrs", "greedy"],
    "k": [1, 5],
    "eps": [0.1, 0.05],
    "reps": 3,
    "samples": 20000,
    "timeout": 120,
})

records = bench_grid(spec, progress=lambda msg: print(msg, file=sys.stderr))
print(f"{'dataset':22s} {'algorithm':17s} {'k':>2s} {'eps':>5s} {'size':>6s} {'regret':>7s} {'ms':>8s}")
for r in records:
    if r.agg != "mean" or r.status != "ok":
        continue
    print(f"{r.dataset:22s} {r.label:17s} {r.k:2d} {r.value:5.2f} {r.result_size:6.1f}"
          f" {r.max_regret:7.4f} {r.wall_time_ms:8.1f}")

with open("bench.csv", "w") as fh:
    fh.write(records_to_csv(records))
print("\nwrote bench.csv")
