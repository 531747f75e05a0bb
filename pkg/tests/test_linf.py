import numpy as np
import pytest

from irlsreg import (IterationCapExceededError, LinfConfig, linf_decide,
                     linf_update_factors, long_step_update,
                     verify_linf_certificate)

A_HAND = np.array([[1.0, 1.0]])
B_HAND = np.array([1.0])  # min ||x||_inf = 0.5 at x = (1/2, 1/2)


def test_update_factors_hand_values():
    alpha = linf_update_factors(np.array([0.5, 2.1, -3.0]), M=1.0, eps=0.05)
    np.testing.assert_allclose(alpha, [1.0, 4.41, 9.0], rtol=1e-12)


def test_update_factors_threshold_is_inclusive():
    # |x| exactly (1+eps) M gets boosted
    alpha = linf_update_factors(np.array([1.05]), M=1.0, eps=0.05)
    assert alpha[0] == pytest.approx(1.05**2)
    alpha = linf_update_factors(np.array([1.05 - 1e-12]), M=1.0, eps=0.05)
    assert alpha[0] == 1.0


def test_config_validation():
    with pytest.raises(ValueError):
        LinfConfig(eps=0.0, target_M=1.0)
    with pytest.raises(ValueError):
        LinfConfig(eps=0.7, target_M=1.0)
    with pytest.raises(ValueError):
        LinfConfig(eps=0.1, target_M=-1.0)
    with pytest.raises(ValueError):
        LinfConfig(eps=0.1, target_M=1.0, step_mode="medium")
    with pytest.raises(ValueError):
        LinfConfig(eps=0.1, target_M=1.0, averaging_threshold=0.5)
    with pytest.raises(ValueError):
        LinfConfig(eps=0.1, target_M=1.0, resistance_budget=1.0)


def test_decide_feasible_above_optimum():
    out, trace = linf_decide(A_HAND, B_HAND, LinfConfig(eps=0.05, target_M=0.6))
    assert out.feasible
    assert out.linf_norm <= 1.05 * 0.6 + 1e-12
    res = A_HAND @ out.x - B_HAND
    assert np.linalg.norm(res) <= 1e-7 * np.linalg.norm(B_HAND)


def test_decide_infeasible_below_optimum():
    out, trace = linf_decide(A_HAND, B_HAND, LinfConfig(eps=0.05, target_M=0.4))
    assert not out.feasible
    assert out.r_simplex.sum() == pytest.approx(1.0, abs=1e-12)
    assert out.energy_lb >= (0.95 * 0.4) ** 2
    assert verify_linf_certificate(A_HAND, B_HAND, out.r_simplex, 0.4, 0.05)


def test_decide_zero_rhs():
    out, trace = linf_decide(A_HAND, np.zeros(1), LinfConfig(eps=0.1, target_M=1.0))
    assert out.feasible and out.linf_norm == 0.0 and len(trace) == 0


def test_certificate_rejects_unnormalized_weights():
    assert not verify_linf_certificate(A_HAND, B_HAND, np.array([2.0, 2.0]), 0.4, 0.05)


def test_iteration_cap():
    cfg = LinfConfig(eps=0.05, target_M=0.4, max_iterations=1)
    with pytest.raises(IterationCapExceededError):
        linf_decide(A_HAND, B_HAND, cfg)


def test_short_step_invariant_ratios():
    rng = np.random.default_rng(20)
    A = rng.standard_normal((4, 12))
    b = A @ rng.standard_normal(12)
    M = 0.5 * np.max(np.abs(np.linalg.lstsq(A, b, rcond=None)[0]))
    out, trace = linf_decide(A, b, LinfConfig(eps=0.1, target_M=M))
    ratios = [rec.invariant_ratio for rec in trace.records if rec.invariant_ratio is not None]
    assert ratios, "expected at least one recorded update"
    for ratio in ratios:
        assert ratio >= M**2 * (1 - 1e-9)


def test_long_step_reaches_same_verdicts():
    rng = np.random.default_rng(21)
    for _ in range(5):
        A = rng.standard_normal((3, 9))
        b = A @ rng.standard_normal(9)
        M = 0.6 * np.max(np.abs(np.linalg.lstsq(A, b, rcond=None)[0]))
        short, t_s = linf_decide(A, b, LinfConfig(eps=0.1, target_M=M, step_mode="short"))
        long_, t_l = linf_decide(A, b, LinfConfig(eps=0.1, target_M=M, step_mode="long"))
        if not short.feasible:
            assert not long_.feasible
            assert verify_linf_certificate(A, b, long_.r_simplex, M, 0.1)


def test_long_step_update_noop_when_within_target():
    r = np.array([0.5, 0.5])
    x = np.array([0.1, 0.1])
    r_new = long_step_update(r, x, M=1.0, eps=0.1, A=A_HAND, b=B_HAND)
    np.testing.assert_array_equal(r_new, r)


def test_warm_start_accepts_unnormalized_weights():
    cfg = LinfConfig(eps=0.05, target_M=0.4,
                     warm_start_resistances=np.array([3.0, 1.0]))
    out, trace = linf_decide(A_HAND, B_HAND, cfg)
    assert not out.feasible
    assert verify_linf_certificate(A_HAND, B_HAND, out.r_simplex, 0.4, 0.05)
