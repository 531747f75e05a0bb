"""Certificates and perturbation bounds.

Infeasibility certificates are checkable objects: a simplex weighting of the
columns whose electrical energy is large (for the max-norm problem), or a
potential vector with a large duality ratio (for the 1-norm problem).
Verifying one takes a single linear solve, independent of how it was found.
"""

import numpy as np

from irlsreg import (L1Config, LinfConfig, electrical_energy,
                     energy_increase_lower_bound,
                     inverse_energy_increase_lower_bound, l1_decide,
                     linf_decide, verify_l1_dual, verify_linf_certificate,
                     weighted_least_squares)

rng = np.random.default_rng(8)
A = rng.standard_normal((4, 12))
b = A @ rng.standard_normal(12)
eps = 0.05

x2 = np.linalg.lstsq(A, b, rcond=None)[0]
M_inf = 0.5 * np.max(np.abs(x2))      # comfortably below the linf optimum
M_one = 0.9 * np.linalg.norm(x2, 1)   # may or may not be below the l1 optimum

out, _ = linf_decide(A, b, LinfConfig(eps=eps, target_M=M_inf))
assert not out.feasible
print("linf certificate: simplex weights, sum =", out.r_simplex.sum())
print("  certified energy:", out.energy_lb)
print("  threshold ((1-eps) M)^2:", ((1 - eps) * M_inf) ** 2)
print("  verifier accepts:", verify_linf_certificate(A, b, out.r_simplex, M_inf, eps))
# tampering with the certificate breaks it
bad = out.r_simplex.copy()
bad[0] += 0.5
print("  verifier on tampered weights:", verify_linf_certificate(A, b, bad, M_inf, eps))

out, _ = l1_decide(A, b, L1Config(eps=eps, target_M=M_one))
if not out.feasible:
    print()
    print("l1 certificate: potential vector")
    print("  b^T phi / ||A^T phi||_inf =",
          float(b @ out.phi) / np.max(np.abs(A.T @ out.phi)))
    print("  verifier accepts:", verify_l1_dual(A, b, out.phi, M_one, eps))

print()
print("perturbation bounds (what drives the solvers forward):")
r = rng.uniform(0.2, 2.0, size=12)
sol = weighted_least_squares(A, b, r)
r_new = r * rng.uniform(1.0, 6.0, size=12)
lb = energy_increase_lower_bound(r, r_new, sol.flow)
truth = electrical_energy(A, b, r_new)
print(f"  energy: bound {lb:.6f} <= truth {truth:.6f}"
      f"  (gap {100 * (truth - lb) / truth:.1f}%)")

c = rng.uniform(0.2, 2.0, size=12)
sol = weighted_least_squares(A, b, 1.0 / c)
c_new = c * rng.uniform(1.0, 6.0, size=12)
lb = inverse_energy_increase_lower_bound(c, c_new, sol.potentials, sol.energy, A)
truth = 1.0 / electrical_energy(A, b, 1.0 / c_new)
print(f"  inverse energy: bound {lb:.6f} <= truth {truth:.6f}"
      f"  (gap {100 * (truth - lb) / truth:.1f}%)")
