"""Decision solver for min ||x||_1 subject to A x = b.

The iteration maintains conductances rather than resistances and tracks the
inverse electrical energy.  Feasible outcomes carry both the primal point and
the simplex-normalized conductances that certify it; infeasible outcomes carry
a potential vector phi with b^T phi / ||A^T phi||_inf >= (1-eps) M.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import (DegenerateCertificateError, InvariantViolationError,
                         IterationCapExceededError)
from .linalg import (as_matrix, as_vector, as_weights, gram, pseudo_solve,
                     _pseudo_solve_core)
from .linf import INVARIANT_SLACK, MAX_DOUBLINGS, default_iteration_cap
from .trace import IterationRecord, IterationTrace


@dataclass
class L1Config:
    """Parameters of the l1 decision solve.

    Defaults: rho = m^(1/3) and conductance budget B = 1 + 1/((1+eps)^2 - 1).
    """

    eps: float
    target_M: float
    step_mode: str = "short"
    averaging_threshold: float | None = None
    conductance_budget: float | None = None
    max_iterations: int | None = None
    warm_start_conductances: np.ndarray | None = None

    def __post_init__(self):
        if not 0.0 < self.eps <= 0.5:
            raise ValueError("eps must be in (0, 1/2]")
        if self.target_M <= 0.0:
            raise ValueError("target_M must be positive")
        if self.step_mode not in ("short", "long"):
            raise ValueError("step_mode must be 'short' or 'long'")
        if self.averaging_threshold is not None and self.averaging_threshold < 1.0:
            raise ValueError("averaging_threshold must be >= 1")
        if self.conductance_budget is not None and self.conductance_budget <= 1.0:
            raise ValueError("conductance_budget must be > 1")

    def resolve(self, m):
        rho = self.averaging_threshold if self.averaging_threshold is not None else m ** (1.0 / 3.0)
        budget = self.conductance_budget
        if budget is None:
            budget = 1.0 + 1.0 / ((1.0 + self.eps) ** 2 - 1.0)
        cap = self.max_iterations
        if cap is None:
            cap = default_iteration_cap(m, self.eps)
        return max(rho, 1.0), budget, cap


@dataclass
class L1Feasible:
    x: np.ndarray
    l1_norm: float
    c_simplex: np.ndarray

    feasible = True


@dataclass
class L1Infeasible:
    phi: np.ndarray
    dual_value: float

    feasible = False


def l1_update_factors(g, M, eps):
    """Thresholded update factors for the conductances, g = A^T phi / b^T phi.

    alpha_i = 1 where |g_i| <= 1/((1-eps) M) and (g_i M)^2 otherwise; every
    factor above 1 is at least 1/(1-eps)^2.
    """
    if M <= 0.0:
        raise ValueError("M must be positive")
    g = as_vector(g)
    alpha = np.ones_like(g)
    mask = np.abs(g) > 1.0 / ((1.0 - eps) * M)
    alpha[mask] = (g[mask] * M) ** 2
    return alpha


def extract_feasible(c, A, b, **solve_kwargs):
    """Primal point x = diag(c) A^T (A diag(c) A^T)^+ b.

    Satisfies A x = b, with ||x||_1^2 <= ||c||_1 * b^T (A diag(c) A^T)^+ b.
    The construction is invariant under rescaling c.
    """
    A = as_matrix(A)
    c = as_weights(c, A.shape[1])
    b = as_vector(b, A.shape[0])
    phi = pseudo_solve(gram(A, c), b, **solve_kwargs)
    return c * (A.T @ phi)


def verify_l1_dual(A, b, phi, M, eps):
    """Check that phi certifies min ||x||_1 >= (1-eps) M via weak duality."""
    A = as_matrix(A)
    b = as_vector(b, A.shape[0])
    phi = as_vector(phi, A.shape[0])
    num = float(b @ phi)
    den = float(np.max(np.abs(A.T @ phi)))
    if den == 0.0:
        if num != 0.0:
            raise DegenerateCertificateError("A^T phi = 0 but b^T phi != 0")
        return False  # 0/0 treated as 0
    return num / den >= (1.0 - eps) * M


def _solve_potentials(A, b, c, **solve_kwargs):
    phi = _pseudo_solve_core((A * c) @ A.T, b, **solve_kwargs)
    return phi, float(b @ phi)


def _long_step(A, b, c, alpha, energy_old, M, **solve_kwargs):
    """Square the factors while the inverse-energy ratio guard holds."""
    c_new = c * alpha
    phi_new, energy_new = _solve_potentials(A, b, c_new, **solve_kwargs)
    exponent = 1.0
    for _ in range(MAX_DOUBLINGS):
        exponent *= 2.0
        candidate = c * alpha**exponent
        if not np.all(np.isfinite(candidate)):
            break
        phi_cand, energy_cand = _solve_potentials(A, b, candidate, **solve_kwargs)
        gain = 1.0 / energy_cand - 1.0 / energy_old
        growth = float(np.sum(candidate - c))
        if gain < (1.0 - INVARIANT_SLACK) / M**2 * growth:
            break
        c_new, phi_new, energy_new = candidate, phi_cand, energy_cand
    return c_new, phi_new, energy_new


def long_step_update(c, phi, energy, M, eps, A, b):
    """Return c scaled by alpha^(2^k) for the largest k passing the guard."""
    c = as_weights(c)
    alpha = l1_update_factors((np.asarray(A).T @ phi) / energy, M, eps)
    if np.all(alpha == 1.0):
        return c.copy()
    c_new, _, _ = _long_step(A, b, c, alpha, energy, M)
    return c_new


def l1_decide(A, b, config, **solve_kwargs):
    """Run the thresholded-IRLS decision procedure for the l1 problem.

    Returns (outcome, trace).  The trace mirrors the l-infinity solver, with
    ||c||_1 as the weight norm and delta(1/E)/delta||c||_1 as the progress
    ratio.
    """
    A = as_matrix(A)
    m = A.shape[1]
    b = as_vector(b, A.shape[0])
    eps, M = config.eps, config.target_M
    rho, budget, cap = config.resolve(m)

    trace = IterationTrace()
    if np.linalg.norm(b) == 0.0:
        return L1Feasible(x=np.zeros(m), l1_norm=0.0,
                          c_simplex=np.full(m, 1.0 / m)), trace

    if config.warm_start_conductances is not None:
        c = as_weights(config.warm_start_conductances, m)
        c = c / np.sum(c)
    else:
        c = np.full(m, 1.0 / m)

    s = np.zeros(m)
    big_phi = np.zeros(A.shape[0])
    t_avg = 0
    cached = None
    pending = None  # (record index, old 1/E, old ||c||_1)

    while True:
        c_norm = float(np.sum(c))
        if c_norm > budget:
            break
        if len(trace) >= cap:
            raise IterationCapExceededError(f"l1 solve exceeded {cap} iterations")

        if cached is None:
            cached = _solve_potentials(A, b, c, **solve_kwargs)
        phi, energy = cached
        if energy <= 0.0:
            raise InvariantViolationError("electrical energy must be positive for b != 0")

        if pending is not None:
            idx, old_inv, old_norm = pending
            trace.records[idx].invariant_ratio = (1.0 / energy - old_inv) / (c_norm - old_norm)
            pending = None

        g = (A.T @ phi) / energy
        g_max = float(np.max(np.abs(g)))

        averaged = False
        if g_max <= rho / M:
            t_avg += 1
            s += np.abs(g)
            big_phi += phi / energy
            averaged = True

        alpha = l1_update_factors(g, M, eps)
        n_boosted = int(np.count_nonzero(alpha > 1.0))
        trace.records.append(IterationRecord(
            iteration=len(trace), weight_norm=c_norm, energy=energy,
            invariant_ratio=None, n_boosted=n_boosted,
            max_factor=float(np.max(alpha)), averaged=averaged))

        if averaged and float(np.max(np.abs(s))) / t_avg <= 1.0 / ((1.0 - eps) * M):
            phi_avg = big_phi / t_avg
            dual = float(b @ phi_avg) / float(np.max(np.abs(A.T @ phi_avg)))
            return L1Infeasible(phi=phi_avg, dual_value=dual), trace

        if n_boosted == 0:
            return L1Infeasible(phi=phi, dual_value=float(b @ phi) / (g_max * energy)), trace

        if config.step_mode == "long":
            c_new, phi_new, energy_new = _long_step(A, b, c, alpha, energy, M, **solve_kwargs)
            idx = len(trace) - 1
            trace.records[idx].invariant_ratio = (
                (1.0 / energy_new - 1.0 / energy) / float(np.sum(c_new - c)))
            cached = (phi_new, energy_new)
        else:
            c_new, cached = c * alpha, None
            pending = (len(trace) - 1, 1.0 / energy, c_norm)
        c = c_new

    phi_fin, energy_fin = cached if cached is not None else _solve_potentials(A, b, c, **solve_kwargs)
    x = c * (A.T @ phi_fin)
    if pending is not None:
        idx, old_inv, old_norm = pending
        trace.records[idx].invariant_ratio = (
            (1.0 / energy_fin - old_inv) / (float(np.sum(c)) - old_norm))
    return L1Feasible(x=x, l1_norm=float(np.sum(np.abs(x))),
                      c_simplex=c / np.sum(c)), trace
