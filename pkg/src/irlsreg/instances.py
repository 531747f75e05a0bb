"""Instance generation, file I/O, and the exact small-instance LP oracle."""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .exceptions import OracleInfeasibleError, ParseError, SpanError, TooLargeError
from .linalg import as_matrix, as_vector

ORACLE_MAX_COLS = 12
_SPAN_RTOL = 1e-8


@dataclass
class RegressionInstance:
    A: np.ndarray
    b: np.ndarray
    truth: np.ndarray | None = None
    seed: int | None = None


@dataclass
class DirectedGraph:
    """Arcs are (tail, head) pairs over vertices 0..n_vertices-1."""

    n_vertices: int
    edges: list = field(default_factory=list)

    def __post_init__(self):
        for tail, head in self.edges:
            if not (0 <= tail < self.n_vertices and 0 <= head < self.n_vertices):
                raise ValueError(f"edge ({tail}, {head}) out of range")
            if tail == head:
                raise ValueError(f"self-loop at vertex {tail}")


def random_orthogonal_instance(n, m, sparsity, seed, max_retries=10):
    """Random instance with orthonormal rows and a sparse +/-1 ground truth.

    A is the orthonormalization of an (n, m) Gaussian draw, the ground truth
    has exactly ``sparsity`` nonzero +/-1 entries, and b = A @ truth.
    Deterministic for a fixed seed.
    """
    if not 1 <= n <= m:
        raise ValueError("need 1 <= n <= m")
    if not 1 <= sparsity <= m:
        raise ValueError("need 1 <= sparsity <= m")
    rng = np.random.default_rng(seed)
    for _ in range(max_retries):
        G = rng.standard_normal((n, m))
        if np.linalg.matrix_rank(G) < n:
            continue
        Q, _ = np.linalg.qr(G.T)
        A = Q[:, :n].T
        support = rng.choice(m, size=sparsity, replace=False)
        signs = rng.choice([-1.0, 1.0], size=sparsity)
        truth = np.zeros(m)
        truth[support] = signs
        return RegressionInstance(A=A, b=A @ truth, truth=truth, seed=seed)
    raise ValueError("degenerate draws exhausted the retry budget")


def incidence_matrix(g):
    """Vertex-arc incidence matrix: +1 where the arc leaves, -1 where it enters."""
    if not g.edges:
        raise ValueError("graph must have at least one edge")
    A = np.zeros((g.n_vertices, len(g.edges)))
    for j, (tail, head) in enumerate(g.edges):
        A[tail, j] = 1.0
        A[head, j] = -1.0
    return A


def check_span(A, b, rtol=_SPAN_RTOL):
    """Return True iff b lies in the column span of A."""
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return True
    x, *_ = np.linalg.lstsq(A, b, rcond=None)
    return np.linalg.norm(A @ x - b) <= rtol * bnorm


def lp_oracle(A, b, norm):
    """Exact optimum of min ||x||_p over A x = b by basic-solution enumeration.

    Only intended for small instances (m <= 12); used as the ground truth in
    acceptance tests.
    """
    A = as_matrix(A)
    b = as_vector(b, A.shape[0])
    n, m = A.shape
    if norm not in ("linf", "l1"):
        raise ValueError("norm must be 'linf' or 'l1'")
    if m > ORACLE_MAX_COLS:
        raise TooLargeError(f"oracle limited to m <= {ORACLE_MAX_COLS} columns")
    if not check_span(A, b):
        raise OracleInfeasibleError("b is outside the column span of A")
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return 0.0
    tol = 1e-9 * max(1.0, bnorm)
    rank = np.linalg.matrix_rank(A)

    if norm == "l1":
        # An optimal solution is supported on at most rank(A) independent
        # columns; sweep all small supports.
        best = np.inf
        for size in range(1, rank + 1):
            for cols in itertools.combinations(range(m), size):
                sub = A[:, cols]
                sol, *_ = np.linalg.lstsq(sub, b, rcond=None)
                if np.linalg.norm(sub @ sol - b) <= tol:
                    best = min(best, float(np.sum(np.abs(sol))))
        if not np.isfinite(best):
            raise OracleInfeasibleError("no basic feasible solution found")
        return best

    # l-infinity: at a vertex of {(x, t) : A x = b, |x_i| <= t} at least
    # m + 1 - rank(A) of the sign constraints x_i = +/- t are active.
    best = np.inf
    min_active = max(1, m + 1 - rank)
    for size in range(min_active, m + 1):
        for cols in itertools.combinations(range(m), size):
            free = [j for j in range(m) if j not in cols]
            for signs in itertools.product((-1.0, 1.0), repeat=size):
                sigma = np.array(signs)
                # Unknowns: x on the free coordinates, then t.
                Msys = np.empty((n, len(free) + 1))
                Msys[:, :len(free)] = A[:, free]
                Msys[:, -1] = A[:, cols] @ sigma
                sol, *_ = np.linalg.lstsq(Msys, b, rcond=None)
                if np.linalg.norm(Msys @ sol - b) > tol:
                    continue
                t = sol[-1]
                if t < -tol:
                    continue
                t = max(t, 0.0)
                if free and np.max(np.abs(sol[:-1])) > t + tol:
                    continue
                best = min(best, float(t))
    if not np.isfinite(best):
        raise OracleInfeasibleError("no basic feasible solution found")
    return best


def write_instance(path, instance):
    """Serialize an instance; 17 significant digits for exact round trips."""
    A = as_matrix(instance.A)
    b = as_vector(instance.b, A.shape[0])
    n, m = A.shape
    with open(path, "w") as fh:
        fh.write(f"{n} {m}\n")
        for row in A:
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")
        fh.write(" ".join(f"{v:.17g}" for v in b) + "\n")
        if instance.truth is not None:
            truth = as_vector(instance.truth, m)
            fh.write("truth:\n")
            fh.write(" ".join(f"{v:.17g}" for v in truth) + "\n")


def _parse_reals(text, count, line_number):
    parts = text.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} values, found {len(parts)}", line_number)
    try:
        return np.array([float(p) for p in parts])
    except ValueError:
        raise ParseError("invalid real number", line_number) from None


def read_instance(path, verify_span=True):
    """Parse an instance file; raises ParseError / SpanError on bad input."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError("expected 'n m' dimension line", 1)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError("dimensions must be integers", 1) from None
    if n < 1 or m < 1:
        raise ParseError("dimensions must be positive", 1)
    if len(lines) < n + 2:
        raise ParseError(f"expected {n} matrix rows plus b", len(lines) + 1)
    A = np.vstack([_parse_reals(lines[1 + i], m, 2 + i) for i in range(n)])
    b = _parse_reals(lines[1 + n], n, 2 + n)
    truth = None
    rest = [ln for ln in lines[2 + n:] if ln.strip()]
    if rest:
        if rest[0].strip() != "truth:":
            raise ParseError("expected 'truth:' marker", 3 + n)
        if len(rest) < 2:
            raise ParseError("missing truth vector", 4 + n)
        truth = _parse_reals(rest[1], m, 4 + n)
    if verify_span and not check_span(A, b):
        raise SpanError("b is outside the column span of A")
    return RegressionInstance(A=A, b=b, truth=truth)
