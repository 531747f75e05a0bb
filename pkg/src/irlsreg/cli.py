"""Command-line harness: solve instances, run benchmark grids, generate instances.

Exit codes: 0 on success, 2 on flag/parse errors, 3 on solver errors.
"""

import argparse
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import IrlsError
from .instances import (DirectedGraph, RegressionInstance, incidence_matrix,
                        random_orthogonal_instance, read_instance, write_instance)
from .l1 import L1Config, l1_decide
from .linalg import weighted_least_squares
from .linf import LinfConfig, linf_decide
from .search import optimize, phased_decide

CSV_HEADER = "solver,mode,step,n,m,eps,target,iterations,wall_ms,outcome,objective,certificate,seed"


@dataclass
class RunRecord:
    solver: str
    mode: str
    step: str
    n: int
    m: int
    eps: float
    target: float | None
    iterations: int
    wall_ms: float
    outcome: str
    objective: float | None
    certificate: float | None
    seed: int | None

    def csv_row(self):
        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, float):
                return f"{v:.17g}"
            return str(v)
        return ",".join(fmt(v) for v in (
            self.solver, self.mode, self.step, self.n, self.m, self.eps,
            self.target, self.iterations, self.wall_ms, self.outcome,
            self.objective, self.certificate, self.seed))


def _decide_record(A, b, solver, eps, target, step, phases, seed):
    t0 = time.perf_counter()
    if phases:
        res = phased_decide(A, b, eps, target, solver, step_mode=step)
        out, iterations = res.outcome, res.iterations
    elif solver == "linf":
        out, trace = linf_decide(A, b, LinfConfig(eps=eps, target_M=target, step_mode=step))
        iterations = len(trace)
    else:
        out, trace = l1_decide(A, b, L1Config(eps=eps, target_M=target, step_mode=step))
        iterations = len(trace)
    wall_ms = (time.perf_counter() - t0) * 1e3
    if out.feasible:
        objective = out.linf_norm if solver == "linf" else out.l1_norm
        certificate = None
        tag = "feasible"
    else:
        objective = None
        certificate = math.sqrt(out.energy_lb) if solver == "linf" else out.dual_value
        tag = "infeasible"
    trace_obj = None if phases else trace
    return RunRecord(solver=solver, mode="decide", step=step, n=A.shape[0], m=A.shape[1],
                     eps=eps, target=target, iterations=max(iterations, 1),
                     wall_ms=wall_ms, outcome=tag, objective=objective,
                     certificate=certificate, seed=seed), trace_obj


def _optimize_record(A, b, solver, eps, step, phases, seed):
    t0 = time.perf_counter()
    res = optimize(A, b, eps, solver, step_mode=step, use_phases=phases)
    wall_ms = (time.perf_counter() - t0) * 1e3
    return RunRecord(solver=solver, mode="optimize", step=step, n=A.shape[0], m=A.shape[1],
                     eps=eps, target=None, iterations=max(res.iterations, 1),
                     wall_ms=wall_ms, outcome="optimal", objective=res.value,
                     certificate=res.lower_bound, seed=seed), None


def cmd_solve(args):
    instance = read_instance(args.instance)
    A, b = instance.A, instance.b
    if args.mode == "decide":
        if args.target is None:
            print("error: --target is required in decide mode", file=sys.stderr)
            return 2
        record, trace = _decide_record(A, b, args.norm, args.eps, args.target,
                                       args.step, args.phases, None)
    else:
        record, trace = _optimize_record(A, b, args.norm, args.eps, args.step,
                                         args.phases, None)
    print(record.csv_row())
    if args.trace and trace is not None:
        trace.write_csv(args.trace)
    return 0


def _bench_grid(args):
    """Yield (index, kwargs) grid points in output order."""
    steps = ["short", "long"] if args.step == "both" else [args.step]
    points = []
    if args.suite == "eps":
        ks = range(1, (args.max_k or 12) + 1)
        for k in ks:
            for step in steps:
                points.append({"eps": 0.5**k, "m": args.m, "step": step})
    else:
        ks = range(1, (args.max_k or 30) + 1)
        for k in ks:
            for step in steps:
                points.append({"eps": args.eps, "m": args.m * k, "step": step})
    return points


def _bench_point(args, point):
    inst = random_orthogonal_instance(args.n, point["m"], args.sparsity, args.seed)
    record, _ = _optimize_record(inst.A, inst.b, args.norm, point["eps"],
                                 point["step"], False, args.seed)
    return record


def cmd_bench(args):
    points = _bench_grid(args)
    workers = int(os.environ.get("IRLS_THREADS", "1") or "1")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda p: _bench_point(args, p), points))
    else:
        records = [_bench_point(args, p) for p in points]
    with open(args.out, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for record in records:
            fh.write(record.csv_row() + "\n")
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _read_demand(path, n):
    values = []
    with open(path) as fh:
        for line in fh:
            values.extend(float(v) for v in line.split())
    if len(values) != n:
        raise ValueError(f"demand file must contain {n} values, found {len(values)}")
    return np.array(values)


def _read_edges(path):
    edges = []
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 2:
                raise ValueError("edge lines must be 'tail head' (1-based)")
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
    return edges


def cmd_gen(args):
    if args.edges is not None:
        if args.n_vertices is None or args.demand is None:
            print("error: graph mode needs --n-vertices and --demand", file=sys.stderr)
            return 2
        g = DirectedGraph(n_vertices=args.n_vertices, edges=_read_edges(args.edges))
        A = incidence_matrix(g)
        b = _read_demand(args.demand, args.n_vertices)
        instance = RegressionInstance(A=A, b=b)
    else:
        if None in (args.n, args.m, args.sparsity, args.seed):
            print("error: need --n, --m, --sparsity and --seed (or graph mode flags)",
                  file=sys.stderr)
            return 2
        instance = random_orthogonal_instance(args.n, args.m, args.sparsity, args.seed)
    write_instance(args.out, instance)
    print(f"wrote instance to {args.out}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="irlsreg",
                                     description="IRLS solvers for l-infinity and l1 regression")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a single instance file")
    p.add_argument("--norm", choices=["linf", "l1"], required=True)
    p.add_argument("--mode", choices=["decide", "optimize"], required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--target", type=float)
    p.add_argument("--step", choices=["short", "long"], default="short")
    p.add_argument("--phases", action="store_true")
    p.add_argument("--instance", required=True)
    p.add_argument("--trace", help="write per-iteration trace CSV here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="run a benchmark grid, writing CSV")
    p.add_argument("--suite", choices=["eps", "m"], required=True)
    p.add_argument("--norm", choices=["linf", "l1"], required=True)
    p.add_argument("--step", choices=["short", "long", "both"], default="short")
    p.add_argument("--n", type=int, default=150)
    p.add_argument("--m", type=int, default=200)
    p.add_argument("--sparsity", type=int, default=15)
    p.add_argument("--eps", type=float, default=0.01, help="accuracy for the m suite")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-k", type=int, dest="max_k")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--sparsity", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--edges", help="edge list file (graph mode, 1-based 'tail head' lines)")
    p.add_argument("--n-vertices", type=int, dest="n_vertices")
    p.add_argument("--demand", help="demand vector file (graph mode)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (IrlsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
