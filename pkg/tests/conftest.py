"""Shared fixtures: reference LP solvers and the small-instance desk suite."""

import numpy as np
import pytest
from scipy.optimize import linprog

from irlsreg import lp_oracle, random_orthogonal_instance


def ref_min_l1(A, b):
    """min ||x||_1 s.t. A x = b via an LP (split x = u - v, u, v >= 0)."""
    n, m = A.shape
    res = linprog(c=np.ones(2 * m), A_eq=np.hstack([A, -A]), b_eq=b,
                  bounds=[(0, None)] * (2 * m), method="highs")
    assert res.status == 0, res.message
    return res.fun


def ref_min_linf(A, b):
    """min ||x||_inf s.t. A x = b via an LP in (x, t)."""
    n, m = A.shape
    c = np.zeros(m + 1)
    c[-1] = 1.0
    A_eq = np.hstack([A, np.zeros((n, 1))])
    # x_i - t <= 0 and -x_i - t <= 0
    A_ub = np.block([[np.eye(m), -np.ones((m, 1))],
                     [-np.eye(m), -np.ones((m, 1))]])
    bounds = [(None, None)] * m + [(0, None)]
    res = linprog(c=c, A_eq=A_eq, b_eq=b, A_ub=A_ub, b_ub=np.zeros(2 * m),
                  bounds=bounds, method="highs")
    assert res.status == 0, res.message
    return res.fun


@pytest.fixture(scope="session")
def desk_suite():
    """200 seeded instances with n in 1..4, m in 2..8, plus exact optima."""
    suite = []
    for n in range(1, 5):
        for m in range(max(2, n), 9):
            for rep in range(8):
                inst = random_orthogonal_instance(n, m, min(2, m), rep * 100 + n * 10 + m)
                if np.linalg.norm(inst.b) < 1e-9:
                    continue
                opt_linf = lp_oracle(inst.A, inst.b, "linf")
                opt_l1 = lp_oracle(inst.A, inst.b, "l1")
                suite.append((inst, opt_linf, opt_l1))
    assert len(suite) >= 200
    return suite
