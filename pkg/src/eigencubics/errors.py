"""Shared exception types with CLI exit-code semantics."""


class InputError(ValueError):
    """Malformed payload or scalar text (exit code 2)."""


class SolverError(RuntimeError):
    """Numeric failure: non-convergence or ill-conditioned clustering (exit 3)."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class DegeneracyError(ValueError):
    """A construction hit one of the catalogued degenerate branches (exit 4).

    ``redirect`` names the builder that handles the branch, when one exists.
    """

    def __init__(self, message, redirect=None):
        super().__init__(message)
        self.redirect = redirect


class PositiveDimensionalError(DegeneracyError):
    """The eigenscheme has a 1-dimensional component; use positive_dim_analysis."""

    def __init__(self, message="eigenscheme is positive-dimensional"):
        super().__init__(message, redirect="positive_dim_analysis")
