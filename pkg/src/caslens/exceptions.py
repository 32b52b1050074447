"""Exception types shared across the package.

Domain errors (bad arguments, inconsistent configuration) raise plain
ValueError subclasses and map to the CLI usage exit code.  Numerical
failures raise NumericalError subclasses and map to the numerical-failure
exit code, so a truncated sum or quadrature is never silently accepted.
"""

from __future__ import annotations


class NumericalError(RuntimeError):
    """A numerical procedure failed to reach its requested accuracy."""


class SlowConvergenceError(NumericalError):
    """The series parameter is below the supported range.

    Raised when the dimensionless thermal parameter is too small for the
    closed series to converge in a reasonable number of terms; callers
    should use the zero-temperature asymptote or the brute-force sum.
    """


class ConvergenceError(NumericalError):
    """A truncated sum did not converge within its term budget."""


class QuadratureError(NumericalError):
    """Adaptive quadrature could not meet the requested tolerance."""


class TableLookupError(ValueError):
    """A required coefficient is missing from a user-supplied table."""


class DegenerateBudgetError(ValueError):
    """An error budget is degenerate (e.g. zero scatter of the mean)."""


class DegenerateImperfectionError(ValueError):
    """Imperfection parameters describe an empty or impossible defect."""
