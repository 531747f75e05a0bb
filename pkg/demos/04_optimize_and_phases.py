"""From decision to optimization.

The decision solvers answer "is there a point of norm at most M?".  Wrapping
them in a bisection over M turns this into approximate minimization: the
search keeps an interval [L, U] where L is certified and U is achieved, and
probes the geometric mean with a coarse accuracy that tightens as the
interval shrinks.  Phase scheduling reuses each level's certificate to warm
start the next one, which shrinks the weight budget per call.
"""

import time

import numpy as np

from irlsreg import lp_oracle, optimize, random_orthogonal_instance

inst = random_orthogonal_instance(n=4, m=10, sparsity=3, seed=5)
A, b = inst.A, inst.b

for norm in ("linf", "l1"):
    opt = lp_oracle(A, b, norm)
    res = optimize(A, b, eps=0.05, norm=norm)
    print(f"{norm}: exact {opt:.6f}, returned {res.value:.6f} "
          f"(ratio {res.value / opt:.4f}), certified lower bound {res.lower_bound:.6f}")
    print(f"  {res.iterations} total inner iterations over "
          f"{len(res.search.history)} decision calls:")
    for M, eps_t, tag in res.search.history:
        print(f"    target {M:.5f}  accuracy {eps_t:.3f}  -> {tag}")
    print()

print("phase scheduling on a larger instance:")
inst = random_orthogonal_instance(n=40, m=120, sparsity=10, seed=5)
for use_phases in (False, True):
    t0 = time.perf_counter()
    res = optimize(inst.A, inst.b, eps=0.02, norm="linf", use_phases=use_phases)
    ms = 1e3 * (time.perf_counter() - t0)
    label = "phased" if use_phases else "plain "
    print(f"  {label}: value {res.value:.6f}, {res.iterations} iterations, {ms:.0f} ms")
