"""Measure how the sparse filtration size scales with the number of points.

The full Rips 2-skeleton grows like n^3; the sparse filtration grows linearly
once the per-point neighborhoods stop feeling the domain boundary.  The
per-point constant is governed by the approximation parameter: smaller
epsilon means a tighter diagram approximation but denser neighborhoods.
This prints the same table as ``sparse-rips stats``.
"""

import time

import numpy as np

import sparse_rips as sr
from sparse_rips.generators import uniform2d

print(f"{'n':>6} {'eps':>5} {'simplices':>10} {'per point':>10} "
      f"{'max |E(p)|':>11} {'seconds':>8}")
for epsilon in (1 / 3, 0.1):
    for n in (250, 500, 1000, 2000):
        rng = np.random.default_rng([4, n])
        m = sr.from_points(uniform2d(n, rng))
        t0 = time.perf_counter()
        ctx = sr.WeightContext.build(m, epsilon)
        stats = sr.sparse_size_stats(m, ctx, k=2)
        elapsed = time.perf_counter() - t0
        print(f"{n:>6} {epsilon:>5.2f} {stats.total:>10} "
              f"{stats.total / n:>10.1f} {stats.max_degree:>11} "
              f"{elapsed:>8.2f}")
    print()

print("full Rips 2-skeleton for comparison: n + C(n,2) + C(n,3)")
for n in (250, 500, 1000, 2000):
    full = n + n * (n - 1) // 2 + n * (n - 1) * (n - 2) // 6
    print(f"{n:>6} {'':>5} {full:>10} {full / n:>10.1f}")
