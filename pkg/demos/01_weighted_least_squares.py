"""Weighted least squares as an electrical network.

Minimizing <r, x^2> over all x with A x = b is exactly the problem of routing
a current demand b through a resistor network: x is the flow, the dual
variables phi are vertex potentials, and the optimal value is the dissipated
energy.  This script walks through the coupled quantities on a small example.
"""

import numpy as np

from irlsreg import weighted_least_squares, electrical_energy, dual_energy_value

# two parallel wires carrying one unit of current
A = np.array([[1.0, 1.0]])
b = np.array([1.0])

print("uniform resistances: current splits evenly")
sol = weighted_least_squares(A, b, np.array([1.0, 1.0]))
print("  flow      ", sol.flow)
print("  potentials", sol.potentials)
print("  energy    ", sol.energy)

print()
print("triple the resistance on wire 2: most current takes wire 1")
sol = weighted_least_squares(A, b, np.array([1.0, 3.0]))
print("  flow      ", sol.flow)        # (3/4, 1/4)
print("  energy    ", sol.energy)      # 3/4

# the flow/potential coupling x_i = (A^T phi)_i / r_i holds coordinate-wise
r = np.array([1.0, 3.0])
coupled = (A.T @ sol.potentials) / r
print("  coupling max error:", np.max(np.abs(coupled - sol.flow)))

print()
print("a larger random network")
rng = np.random.default_rng(3)
A = rng.standard_normal((5, 20))
b = A @ rng.standard_normal(20)
r = rng.uniform(0.1, 2.0, size=20)

sol = weighted_least_squares(A, b, r)
print("  residual ||Ax - b||:", np.linalg.norm(A @ sol.flow - b))
print("  energy three ways:")
print("    <r, x^2>          =", float(r @ sol.flow**2))
print("    b^T phi           =", float(b @ sol.potentials))
print("    electrical_energy =", electrical_energy(A, b, r))

# any potentials give a lower bound on the energy (weak duality);
# the optimal ones are tight
phi_guess = rng.standard_normal(5)
print("  dual value at a random phi  :", dual_energy_value(A, b, r, phi_guess))
print("  dual value at optimal phi   :", dual_energy_value(A, b, r, sol.potentials))
