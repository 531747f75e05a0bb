"""IRLS solvers for l-infinity and l1 regression under affine constraints."""

from .energy import (dual_energy_value, electrical_energy, energy_increase_lower_bound,
                     energy_of_flow, inverse_energy_increase_lower_bound)
from .exceptions import (DegenerateCertificateError, InvariantViolationError, IrlsError,
                         IterationCapExceededError, NonConvergenceError, NonMonotoneError,
                         OracleInfeasibleError, ParseError, RangeError, SpanError,
                         TooLargeError)
from .instances import (DirectedGraph, RegressionInstance, incidence_matrix, lp_oracle,
                        random_orthogonal_instance, read_instance, write_instance)
from .l1 import (L1Config, L1Feasible, L1Infeasible, extract_feasible, l1_decide,
                 l1_update_factors, verify_l1_dual)
from .linalg import ElectricalSolution, gram, pseudo_solve, weighted_least_squares
from .linf import (LinfConfig, LinfFeasible, LinfInfeasible, linf_decide,
                   linf_update_factors, long_step_update, verify_linf_certificate)
from .search import OptimizeResult, PhasedResult, SearchState, optimize, phased_decide
from .trace import IterationRecord, IterationTrace

__version__ = "0.1.0"

__all__ = [
    "DegenerateCertificateError", "DirectedGraph", "ElectricalSolution",
    "InvariantViolationError", "IrlsError", "IterationCapExceededError",
    "IterationRecord", "IterationTrace", "L1Config", "L1Feasible", "L1Infeasible",
    "LinfConfig", "LinfFeasible", "LinfInfeasible", "NonConvergenceError",
    "NonMonotoneError", "OptimizeResult", "OracleInfeasibleError", "ParseError",
    "PhasedResult", "RangeError", "RegressionInstance", "SearchState", "SpanError",
    "TooLargeError", "dual_energy_value", "electrical_energy",
    "energy_increase_lower_bound", "energy_of_flow", "extract_feasible", "gram",
    "incidence_matrix", "inverse_energy_increase_lower_bound", "l1_decide",
    "l1_update_factors", "linf_decide", "linf_update_factors", "long_step_update",
    "lp_oracle", "optimize", "phased_decide", "pseudo_solve",
    "random_orthogonal_instance", "read_instance", "verify_l1_dual",
    "verify_linf_certificate", "weighted_least_squares", "write_instance",
]
