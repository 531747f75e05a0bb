"""The two decision solvers.

Given a target value M, each solver either produces a feasible point whose
norm is at most (1+eps) M, or a certificate that no point of norm below
(1-eps) M exists.  We probe both sides of the optimum on a small instance
where the exact answers are known.
"""

import numpy as np

from irlsreg import (L1Config, LinfConfig, l1_decide, linf_decide, lp_oracle,
                     random_orthogonal_instance)

inst = random_orthogonal_instance(n=3, m=8, sparsity=3, seed=21)
A, b = inst.A, inst.b
eps = 0.05

opt_linf = lp_oracle(A, b, "linf")
opt_l1 = lp_oracle(A, b, "l1")
print(f"exact optima: linf = {opt_linf:.6f}, l1 = {opt_l1:.6f}")
print()

for factor in (1.2, 0.8):
    M = factor * opt_linf
    out, trace = linf_decide(A, b, LinfConfig(eps=eps, target_M=M))
    if out.feasible:
        print(f"linf target {M:.4f}: feasible, ||x||_inf = {out.linf_norm:.6f} "
              f"({len(trace)} iterations)")
    else:
        print(f"linf target {M:.4f}: infeasible, certified energy "
              f"{out.energy_lb:.6f} >= {((1-eps)*M)**2:.6f} ({len(trace)} iterations)")

print()
for factor in (1.2, 0.8):
    M = factor * opt_l1
    out, trace = l1_decide(A, b, L1Config(eps=eps, target_M=M))
    if out.feasible:
        print(f"l1 target {M:.4f}: feasible, ||x||_1 = {out.l1_norm:.6f} "
              f"({len(trace)} iterations)")
    else:
        dual = float(b @ out.phi) / np.max(np.abs(A.T @ out.phi))
        print(f"l1 target {M:.4f}: infeasible, dual ratio {dual:.6f} "
              f">= {(1-eps)*M:.6f} ({len(trace)} iterations)")

print()
print("per-iteration trace of a run (linf, target below the optimum):")
out, trace = linf_decide(A, b, LinfConfig(eps=0.2, target_M=0.7 * opt_linf))
print(f"  {'iter':>4} {'||r||_1':>10} {'energy':>10} {'ratio/M^2':>10} {'boosted':>8}")
M2 = (0.7 * opt_linf) ** 2
for rec in trace.records:
    ratio = "" if rec.invariant_ratio is None else f"{rec.invariant_ratio / M2:10.3f}"
    print(f"  {rec.iteration:>4} {rec.weight_norm:>10.4f} {rec.energy:>10.4f} "
          f"{ratio:>10} {rec.n_boosted:>8}")
print("every recorded ratio is >= 1: energy grows at least as fast as M^2 per")
print("unit of resistance added, which is what eventually certifies the bound")
