"""Dense linear algebra primitives.

Everything operates on plain numpy arrays: a constraint matrix is an (n, m)
float array, vectors are 1-d float arrays, and weight vectors (resistances or
conductances) are 1-d strictly positive float arrays.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import cg as _cg

from .exceptions import NonConvergenceError, RangeError

# Defaults for the pseudo-solve.  Eigenvalues below REL_EIG_CUTOFF times the
# largest one are treated as zero; the a-posteriori residual check decides
# whether b was in the range of L.
REL_EIG_CUTOFF = 1e-12
RESIDUAL_RTOL = 1e-8
CG_RTOL = 1e-10
DIRECT_SIZE_LIMIT = 2000


def as_matrix(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise ValueError(f"expected a 2-d matrix with positive dimensions, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    return A


def as_vector(v, length=None):
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got shape {v.shape}")
    if length is not None and v.shape[0] != length:
        raise ValueError(f"expected a vector of length {length}, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def as_weights(w, length=None):
    w = as_vector(w, length)
    if not np.all(w > 0):
        raise ValueError("weights must be strictly positive")
    return w


@dataclass
class ElectricalSolution:
    """Coupled minimizer of a weighted least-squares problem.

    ``flow`` minimizes <r, x^2> over {x : A x = b}, ``potentials`` solve the
    dual, and the two are linked by flow_i = (A^T phi)_i / r_i.  The energy
    equals both <r, flow^2> and b^T potentials.
    """

    flow: np.ndarray
    potentials: np.ndarray
    energy: float


def gram(A, w):
    """Return the symmetric PSD matrix A diag(w) A^T."""
    A = as_matrix(A)
    w = as_weights(w, A.shape[1])
    return (A * w) @ A.T


def pseudo_solve(L, b, *, rel_eig_cutoff=REL_EIG_CUTOFF, residual_rtol=RESIDUAL_RTOL,
                 use_cg=None, cg_rtol=CG_RTOL, cg_maxiter=None):
    """Minimum-norm solution of L phi = b for symmetric PSD L.

    Uses a direct factorization for systems up to DIRECT_SIZE_LIMIT unknowns
    and conjugate gradients beyond that; ``use_cg`` forces one path.

    Raises RangeError when the residual check fails after the solver converged
    (b outside the range of L) and NonConvergenceError when CG hits its
    iteration cap.
    """
    L = as_matrix(L)
    n = L.shape[0]
    if L.shape[1] != n:
        raise ValueError("L must be square")
    b = as_vector(b, n)
    return _pseudo_solve_core(L, b, rel_eig_cutoff, residual_rtol,
                              use_cg, cg_rtol, cg_maxiter)


def _pseudo_solve_core(L, b, rel_eig_cutoff=REL_EIG_CUTOFF, residual_rtol=RESIDUAL_RTOL,
                       use_cg=None, cg_rtol=CG_RTOL, cg_maxiter=None):
    n = L.shape[0]
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return np.zeros(n)

    if use_cg is None:
        use_cg = n > DIRECT_SIZE_LIMIT

    if use_cg:
        maxiter = 20 * n if cg_maxiter is None else cg_maxiter
        phi, info = _cg(L, b, rtol=cg_rtol, atol=0.0, maxiter=maxiter)
        if info > 0:
            raise NonConvergenceError(f"CG did not converge within {maxiter} iterations")
        if np.linalg.norm(L @ phi - b) > residual_rtol * bnorm:
            raise RangeError("b is not in the range of L")
        return phi

    # Cheap path first: a PD Cholesky solve.  Falls through to the
    # eigendecomposition for singular or ill-conditioned L.
    try:
        factor = scipy.linalg.cho_factor(L, check_finite=False)
        phi = scipy.linalg.cho_solve(factor, b, check_finite=False)
        if np.linalg.norm(L @ phi - b) <= residual_rtol * bnorm:
            return phi
    except scipy.linalg.LinAlgError:
        pass

    eigvals, eigvecs = np.linalg.eigh(L)
    cutoff = rel_eig_cutoff * max(eigvals[-1], 0.0)
    inv = np.where(eigvals > cutoff, 1.0 / np.where(eigvals > cutoff, eigvals, 1.0), 0.0)
    phi = eigvecs @ (inv * (eigvecs.T @ b))
    if np.linalg.norm(L @ phi - b) > residual_rtol * bnorm:
        raise RangeError("b is not in the range of L")
    return phi


def weighted_least_squares(A, b, r, **solve_kwargs):
    """Minimize <r, x^2> subject to A x = b.

    Returns the coupled (flow, potentials, energy) triple: the potentials are
    phi = (A diag(1/r) A^T)^+ b, the flow is (A^T phi) / r, and the energy is
    b^T phi.
    """
    A = as_matrix(A)
    r = as_weights(r, A.shape[1])
    b = as_vector(b, A.shape[0])
    return _weighted_solve(A, b, r, **solve_kwargs)


def _weighted_solve(A, b, r, **solve_kwargs):
    """weighted_least_squares on pre-validated inputs (solver inner loops)."""
    L = (A * (1.0 / r)) @ A.T
    phi = _pseudo_solve_core(L, b, **solve_kwargs)
    flow = (A.T @ phi) / r
    energy = float(b @ phi)
    return ElectricalSolution(flow=flow, potentials=phi, energy=energy)
