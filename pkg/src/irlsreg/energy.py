"""Electrical-energy quantities and perturbation lower bounds.

These are used both inside the solvers (long-step guard) and as independent
oracles in the test suite.
"""

import numpy as np

from .exceptions import NonMonotoneError
from .linalg import as_matrix, as_vector, as_weights, weighted_least_squares


def energy_of_flow(r, x):
    """Energy <r, x^2> of a flow x under resistances r."""
    r = as_weights(r)
    x = as_vector(x, r.shape[0])
    return float(r @ (x * x))


def electrical_energy(A, b, r, **solve_kwargs):
    """Minimum energy over all x with A x = b, i.e. b^T (A diag(1/r) A^T)^+ b."""
    return weighted_least_squares(A, b, r, **solve_kwargs).energy


def dual_energy_value(A, b, r, phi):
    """Value 2 b^T phi - sum_i (A^T phi)_i^2 / r_i of the dual of the energy problem.

    For any phi this lower bounds the electrical energy (weak duality), with
    equality at the optimal potentials.
    """
    A = as_matrix(A)
    r = as_weights(r, A.shape[1])
    b = as_vector(b, A.shape[0])
    phi = as_vector(phi, A.shape[0])
    g = A.T @ phi
    return float(2.0 * (b @ phi) - np.sum(g * g / r))


def energy_increase_lower_bound(r, r_new, x):
    """Certified lower bound on the energy after increasing resistances.

    ``x`` must be the energy-minimizing flow for ``r``.  The returned value
    <r, x^2> + sum_i r_i x_i^2 (1 - r_i / r_new_i) never exceeds the true new
    energy.
    """
    r = as_weights(r)
    r_new = as_weights(r_new, r.shape[0])
    x = as_vector(x, r.shape[0])
    if np.any(r_new < r):
        raise NonMonotoneError("new resistances must be >= old resistances")
    rx2 = r * x * x
    return float(np.sum(rx2) + np.sum(rx2 * (1.0 - r / r_new)))


def inverse_energy_increase_lower_bound(c, c_new, phi, energy, A):
    """Certified lower bound on 1/energy after increasing conductances.

    ``phi`` must be the optimal potentials for conductances ``c`` and
    ``energy`` the corresponding electrical energy; the returned value never
    exceeds the true new inverse energy.
    """
    A = as_matrix(A)
    c = as_weights(c, A.shape[1])
    c_new = as_weights(c_new, c.shape[0])
    phi = as_vector(phi, A.shape[0])
    if np.any(c_new < c):
        raise NonMonotoneError("new conductances must be >= old conductances")
    if energy <= 0:
        raise ValueError("energy must be positive")
    g2 = (A.T @ phi) ** 2
    return float(1.0 / energy + np.sum(c * g2 * (1.0 - c / c_new)) / energy**2)
