import numpy as np
import pytest
from conftest import ref_min_l1

from irlsreg import (DegenerateCertificateError, L1Config, extract_feasible,
                     l1_decide, l1_update_factors, verify_l1_dual)

A_HAND = np.array([[1.0, 1.0]])
B_HAND = np.array([1.0])  # min ||x||_1 = 1, attained on the segment between e1 and e2


def test_update_factors_hand_values():
    # threshold 1/((1-0.2)*1) = 1.25; only |g| > 1.25 gets boosted
    alpha = l1_update_factors(np.array([0.1, 2.0, -0.5]), M=1.0, eps=0.2)
    np.testing.assert_allclose(alpha, [1.0, 4.0, 1.0], rtol=1e-12)


def test_update_factors_threshold_is_exclusive():
    alpha = l1_update_factors(np.array([1.25]), M=1.0, eps=0.2)
    assert alpha[0] == 1.0
    alpha = l1_update_factors(np.array([1.25 + 1e-9]), M=1.0, eps=0.2)
    assert alpha[0] > 1.0


def test_extract_feasible_hand_instance():
    x = extract_feasible(np.array([1.0, 1.0]), A_HAND, B_HAND)
    np.testing.assert_allclose(x, [0.5, 0.5], rtol=1e-12)


def test_extract_feasible_norm_bound():
    # ||x||_1^2 <= ||c||_1 * b^T (A D(c) A^T)^+ b for any conductances
    rng = np.random.default_rng(30)
    for _ in range(10):
        A = rng.standard_normal((3, 8))
        b = A @ rng.standard_normal(8)
        c = rng.uniform(0.1, 3.0, size=8)
        x = extract_feasible(c, A, b)
        np.testing.assert_allclose(A @ x, b, rtol=0, atol=1e-7 * np.linalg.norm(b))
        L = A @ np.diag(c) @ A.T
        energy = float(b @ np.linalg.pinv(L) @ b)
        assert np.sum(np.abs(x)) ** 2 <= c.sum() * energy * (1 + 1e-9)


def test_extract_feasible_scale_invariant():
    rng = np.random.default_rng(31)
    A = rng.standard_normal((2, 6))
    b = A @ rng.standard_normal(6)
    c = rng.uniform(0.2, 2.0, size=6)
    np.testing.assert_allclose(extract_feasible(c, A, b),
                               extract_feasible(5.0 * c, A, b), rtol=1e-9)


def test_dual_verifier_degenerate_cases():
    A = np.array([[1.0], [0.0]])
    phi = np.array([0.0, 1.0])  # A^T phi = 0
    with pytest.raises(DegenerateCertificateError):
        verify_l1_dual(A, np.array([0.0, 1.0]), phi, M=1.0, eps=0.1)
    assert not verify_l1_dual(A, np.array([1.0, 0.0]), phi, M=1.0, eps=0.1)


def test_decide_feasible_above_optimum():
    out, trace = l1_decide(A_HAND, B_HAND, L1Config(eps=0.05, target_M=1.2))
    assert out.feasible
    assert out.l1_norm <= 1.05 * 1.2 + 1e-12
    assert out.c_simplex.sum() == pytest.approx(1.0, abs=1e-12)
    res = A_HAND @ out.x - B_HAND
    assert np.linalg.norm(res) <= 1e-7 * np.linalg.norm(B_HAND)


def test_decide_infeasible_below_optimum():
    out, trace = l1_decide(A_HAND, B_HAND, L1Config(eps=0.05, target_M=0.8))
    assert not out.feasible
    assert out.dual_value >= 0.95 * 0.8 - 1e-12
    assert verify_l1_dual(A_HAND, B_HAND, out.phi, 0.8, 0.05)


def test_decide_zero_rhs():
    out, trace = l1_decide(A_HAND, np.zeros(1), L1Config(eps=0.1, target_M=1.0))
    assert out.feasible and out.l1_norm == 0.0 and len(trace) == 0


def test_short_step_invariant_ratios():
    rng = np.random.default_rng(32)
    A = rng.standard_normal((4, 12))
    b = A @ rng.standard_normal(12)
    # a target just below the optimum forces a long run with many updates
    M = 0.9 * ref_min_l1(A, b)
    out, trace = l1_decide(A, b, L1Config(eps=0.05, target_M=M))
    ratios = [rec.invariant_ratio for rec in trace.records if rec.invariant_ratio is not None]
    assert ratios, "expected at least one recorded update"
    for ratio in ratios:
        assert ratio >= (1 - 1e-9) / M**2


def test_long_step_reaches_same_verdicts():
    rng = np.random.default_rng(33)
    for _ in range(5):
        A = rng.standard_normal((3, 9))
        b = A @ rng.standard_normal(9)
        M = 0.6 * np.sum(np.abs(np.linalg.lstsq(A, b, rcond=None)[0]))
        short, _ = l1_decide(A, b, L1Config(eps=0.1, target_M=M, step_mode="short"))
        long_, _ = l1_decide(A, b, L1Config(eps=0.1, target_M=M, step_mode="long"))
        if not short.feasible:
            assert not long_.feasible
            assert verify_l1_dual(A, b, long_.phi, M, 0.1)


def test_warm_start_accepts_unnormalized_weights():
    cfg = L1Config(eps=0.05, target_M=1.2,
                   warm_start_conductances=np.array([4.0, 1.0]))
    out, trace = l1_decide(A_HAND, B_HAND, cfg)
    assert out.feasible
    assert out.l1_norm <= 1.05 * 1.2 + 1e-12
