"""Exception types raised across the package."""


class IrlsError(Exception):
    """Base class for all package errors."""


class RangeError(IrlsError):
    """Right-hand side is not in the range of the (singular) system matrix."""


class NonConvergenceError(IrlsError):
    """Iterative linear solver hit its iteration cap."""


class NonMonotoneError(IrlsError):
    """Perturbed weights are not coordinate-wise >= the old weights."""


class IterationCapExceededError(IrlsError):
    """Decision solver exceeded its safety iteration cap.

    The algorithms terminate in finitely many iterations, so hitting the cap
    signals a bug or a tolerance problem rather than a hard instance.
    """


class DegenerateCertificateError(IrlsError):
    """Dual certificate has A^T phi = 0 but b^T phi != 0."""


class InvariantViolationError(IrlsError):
    """An internal invariant that should be impossible to break was broken."""


class TooLargeError(IrlsError):
    """Instance exceeds the enumeration budget of the exact oracle."""


class OracleInfeasibleError(IrlsError):
    """No basic feasible solution exists (b outside the column span of A)."""


class ParseError(IrlsError):
    """Malformed instance file."""

    def __init__(self, message, line_number):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class SpanError(IrlsError):
    """Loaded right-hand side b is not in the column span of A."""
