"""A small benchmark sweep, written as CSV.

Same record format as the command line harness (`irlsreg bench`), scaled
down so it finishes in seconds.  Shows how iteration counts react to the
accuracy eps while the instance stays fixed.
"""

import time

from irlsreg import optimize, random_orthogonal_instance
from irlsreg.cli import CSV_HEADER, RunRecord

OUT = "bench_small.csv"

inst = random_orthogonal_instance(n=30, m=80, sparsity=8, seed=13)
records = []
for k in range(1, 7):
    eps = 0.5**k
    for step in ("short", "long"):
        t0 = time.perf_counter()
        res = optimize(inst.A, inst.b, eps, "linf", step_mode=step)
        wall_ms = 1e3 * (time.perf_counter() - t0)
        records.append(RunRecord(
            solver="linf", mode="optimize", step=step, n=30, m=80, eps=eps,
            target=None, iterations=res.iterations, wall_ms=wall_ms,
            outcome="optimal", objective=res.value,
            certificate=res.lower_bound, seed=13))
        print(f"eps=2^-{k} {step:>5}: {res.iterations:>6} iterations, "
              f"{wall_ms:7.1f} ms, value {res.value:.6f}")

with open(OUT, "w") as fh:
    fh.write(CSV_HEADER + "\n")
    for rec in records:
        fh.write(rec.csv_row() + "\n")
print(f"\nwrote {len(records)} rows to {OUT}")
print("plot with: python3 demos/plot_bench.py bench_small.csv")
