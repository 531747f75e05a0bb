"""Decision solver for min ||x||_inf subject to A x = b.

Given a target value M, either finds x with A x = b and ||x||_inf <= (1+eps) M,
or produces a simplex weighting of the columns whose electrical energy certifies
that no solution with ||x||_inf < (1-eps) M exists.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import IterationCapExceededError
from .linalg import as_matrix, as_vector, as_weights, _weighted_solve, weighted_least_squares
from .trace import IterationRecord, IterationTrace

INVARIANT_SLACK = 1e-9
MAX_DOUBLINGS = 30


@dataclass
class LinfConfig:
    """Parameters of the l-infinity decision solve.

    ``averaging_threshold`` (rho) gates which iterates enter the running
    average; ``resistance_budget`` (B) is the ||r||_1 value at which the solver
    stops and certifies infeasibility.  Defaults: rho = m^(1/3), B = 1/eps.
    """

    eps: float
    target_M: float
    step_mode: str = "short"
    averaging_threshold: float | None = None
    resistance_budget: float | None = None
    max_iterations: int | None = None
    warm_start_resistances: np.ndarray | None = None

    def __post_init__(self):
        if not 0.0 < self.eps <= 0.5:
            raise ValueError("eps must be in (0, 1/2]")
        if self.target_M <= 0.0:
            raise ValueError("target_M must be positive")
        if self.step_mode not in ("short", "long"):
            raise ValueError("step_mode must be 'short' or 'long'")
        if self.averaging_threshold is not None and self.averaging_threshold < 1.0:
            raise ValueError("averaging_threshold must be >= 1")
        if self.resistance_budget is not None and self.resistance_budget <= 1.0:
            raise ValueError("resistance_budget must be > 1")

    def resolve(self, m):
        rho = self.averaging_threshold if self.averaging_threshold is not None else m ** (1.0 / 3.0)
        budget = self.resistance_budget if self.resistance_budget is not None else 1.0 / self.eps
        cap = self.max_iterations
        if cap is None:
            cap = default_iteration_cap(m, self.eps)
        return max(rho, 1.0), budget, cap


def default_iteration_cap(m, eps):
    # An order of magnitude above the proven iteration bound.
    return int(100.0 * (m ** (1.0 / 3.0) * math.log(1.0 / eps) / eps ** (2.0 / 3.0)
                        + math.log(m) / eps**2) + 1e4)


@dataclass
class LinfFeasible:
    x: np.ndarray
    linf_norm: float

    feasible = True


@dataclass
class LinfInfeasible:
    r_simplex: np.ndarray
    energy_lb: float

    feasible = False


def linf_update_factors(x, M, eps):
    """Thresholded multiplicative update factors for the resistances.

    alpha_i = 1 where |x_i| < (1+eps) M and x_i^2 / M^2 otherwise, so every
    factor is either 1 or at least (1+eps)^2.
    """
    if M <= 0.0:
        raise ValueError("M must be positive")
    x = as_vector(x)
    alpha = np.ones_like(x)
    mask = np.abs(x) >= (1.0 + eps) * M
    alpha[mask] = (x[mask] / M) ** 2
    return alpha


def verify_linf_certificate(A, b, r_simplex, M, eps, **solve_kwargs):
    """Check that r_simplex certifies min ||x||_inf >= (1-eps) M."""
    r_simplex = as_weights(r_simplex)
    if abs(float(np.sum(r_simplex)) - 1.0) > 1e-8:
        return False
    energy = weighted_least_squares(A, b, r_simplex, **solve_kwargs).energy
    return energy >= (1.0 - eps) ** 2 * M**2


def _long_step(A, b, r, alpha, energy_old, M):
    """Repeatedly square the update factors while the energy-ratio guard holds.

    Returns the accepted resistances together with their electrical solution
    so the caller does not re-solve.  The single (short) step is always
    accepted.
    """
    r_new = r * alpha
    sol_new = _weighted_solve(A, b, r_new)
    exponent = 1.0
    for _ in range(MAX_DOUBLINGS):
        exponent *= 2.0
        candidate = r * alpha**exponent
        if not np.all(np.isfinite(candidate)):
            break
        sol_cand = _weighted_solve(A, b, candidate)
        gain = sol_cand.energy - energy_old
        growth = float(np.sum(candidate - r))
        if gain < M**2 * (1.0 - INVARIANT_SLACK) * growth:
            break
        r_new, sol_new = candidate, sol_cand
    return r_new, sol_new


def long_step_update(r, x, M, eps, A, b):
    """Return r scaled by alpha^(2^k) for the largest k passing the guard."""
    r = as_weights(r)
    alpha = linf_update_factors(x, M, eps)
    if np.all(alpha == 1.0):
        return r.copy()
    energy_old = float(np.sum(r * x * x))
    r_new, _ = _long_step(A, b, r, alpha, energy_old, M)
    return r_new


def linf_decide(A, b, config, **solve_kwargs):
    """Run the thresholded-IRLS decision procedure for the l-infinity problem.

    Returns (outcome, trace) where the outcome is LinfFeasible or
    LinfInfeasible.  The trace records, per iteration, ||r||_1, the energy,
    the realized progress ratio of the applied update, and the alpha
    statistics.
    """
    A = as_matrix(A)
    m = A.shape[1]
    b = as_vector(b, A.shape[0])
    eps, M = config.eps, config.target_M
    rho, budget, cap = config.resolve(m)

    trace = IterationTrace()
    if np.linalg.norm(b) == 0.0:
        return LinfFeasible(x=np.zeros(m), linf_norm=0.0), trace

    if config.warm_start_resistances is not None:
        r = as_weights(config.warm_start_resistances, m)
        r = r / np.sum(r)
    else:
        r = np.full(m, 1.0 / m)

    s = np.zeros(m)
    t_avg = 0
    sol = None
    pending = None  # (record index, old energy, old ||r||_1) awaiting the next energy

    while True:
        r_norm = float(np.sum(r))
        if r_norm > budget:
            break
        if len(trace) >= cap:
            raise IterationCapExceededError(
                f"l-infinity solve exceeded {cap} iterations")

        if sol is None:
            sol = _weighted_solve(A, b, r, **solve_kwargs)
        x, energy = sol.flow, sol.energy

        if pending is not None:
            idx, old_energy, old_norm = pending
            trace.records[idx].invariant_ratio = (energy - old_energy) / (r_norm - old_norm)
            pending = None

        averaged = False
        if float(np.max(np.abs(x))) <= rho * M:
            t_avg += 1
            s += x
            averaged = True

        alpha = linf_update_factors(x, M, eps)
        n_boosted = int(np.count_nonzero(alpha > 1.0))
        trace.records.append(IterationRecord(
            iteration=len(trace), weight_norm=r_norm, energy=energy,
            invariant_ratio=None, n_boosted=n_boosted,
            max_factor=float(np.max(alpha)), averaged=averaged))

        if averaged and float(np.max(np.abs(s))) / t_avg <= (1.0 + eps) * M:
            x_avg = s / t_avg
            return LinfFeasible(x=x_avg, linf_norm=float(np.max(np.abs(x_avg)))), trace

        if n_boosted == 0:
            return LinfFeasible(x=x, linf_norm=float(np.max(np.abs(x)))), trace

        if config.step_mode == "long":
            r_new, sol_new = _long_step(A, b, r, alpha, energy, M)
            idx = len(trace) - 1
            trace.records[idx].invariant_ratio = (
                (sol_new.energy - energy) / float(np.sum(r_new - r)))
        else:
            r_new, sol_new = r * alpha, None
            pending = (len(trace) - 1, energy, r_norm)
        r, sol = r_new, sol_new

    r_simplex = r / np.sum(r)
    cert_energy = _weighted_solve(A, b, r_simplex, **solve_kwargs).energy
    if pending is not None:
        idx, old_energy, old_norm = pending
        r_norm = float(np.sum(r))
        trace.records[idx].invariant_ratio = (
            (cert_energy * r_norm - old_energy) / (r_norm - old_norm))
    return LinfInfeasible(r_simplex=r_simplex, energy_lb=cert_energy), trace
