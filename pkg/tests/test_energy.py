import numpy as np
import pytest

from irlsreg import (NonMonotoneError, dual_energy_value, electrical_energy,
                     energy_increase_lower_bound, energy_of_flow,
                     inverse_energy_increase_lower_bound, weighted_least_squares)


def _random_triple(rng, n=4, m=9):
    A = rng.standard_normal((n, m))
    b = A @ rng.standard_normal(m)
    r = rng.uniform(0.05, 3.0, size=m)
    return A, b, r


def test_energy_of_flow():
    assert energy_of_flow([2.0, 1.0], [1.0, -3.0]) == pytest.approx(11.0)


def test_electrical_energy_matches_pinv_formula():
    rng = np.random.default_rng(10)
    for _ in range(10):
        A, b, r = _random_triple(rng)
        expected = float(b @ np.linalg.pinv(A @ np.diag(1.0 / r) @ A.T) @ b)
        assert electrical_energy(A, b, r) == pytest.approx(expected, rel=1e-8)


def test_dual_value_is_weak_lower_bound_tight_at_optimum():
    rng = np.random.default_rng(11)
    for _ in range(10):
        A, b, r = _random_triple(rng)
        sol = weighted_least_squares(A, b, r)
        # arbitrary potentials never beat the energy
        for _ in range(5):
            phi = rng.standard_normal(A.shape[0])
            assert dual_energy_value(A, b, r, phi) <= sol.energy * (1 + 1e-10) + 1e-12
        assert dual_energy_value(A, b, r, sol.potentials) == pytest.approx(sol.energy, rel=1e-8)


def test_energy_increase_bound_never_exceeds_truth():
    rng = np.random.default_rng(12)
    for _ in range(30):
        A, b, r = _random_triple(rng)
        sol = weighted_least_squares(A, b, r)
        r_new = r * rng.uniform(1.0, 10.0, size=r.shape)
        bound = energy_increase_lower_bound(r, r_new, sol.flow)
        truth = electrical_energy(A, b, r_new)
        assert bound <= truth * (1 + 1e-10) + 1e-12


def test_energy_increase_bound_tight_without_perturbation():
    rng = np.random.default_rng(13)
    A, b, r = _random_triple(rng)
    sol = weighted_least_squares(A, b, r)
    assert energy_increase_lower_bound(r, r, sol.flow) == pytest.approx(sol.energy, rel=1e-10)


def test_energy_increase_bound_rejects_decreases():
    with pytest.raises(NonMonotoneError):
        energy_increase_lower_bound([1.0, 1.0], [1.0, 0.5], [0.0, 0.0])


def test_inverse_energy_bound_never_exceeds_truth():
    rng = np.random.default_rng(14)
    for _ in range(30):
        A, b, c = _random_triple(rng)
        sol = weighted_least_squares(A, b, 1.0 / c)
        c_new = c * rng.uniform(1.0, 10.0, size=c.shape)
        bound = inverse_energy_increase_lower_bound(c, c_new, sol.potentials, sol.energy, A)
        truth = 1.0 / electrical_energy(A, b, 1.0 / c_new)
        assert bound <= truth * (1 + 1e-10) + 1e-12


def test_inverse_energy_bound_rejects_decreases():
    A = np.array([[1.0, 1.0]])
    with pytest.raises(NonMonotoneError):
        inverse_energy_increase_lower_bound([1.0, 1.0], [0.5, 1.0], [1.0], 0.5, A)
