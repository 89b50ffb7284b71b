"""Exception hierarchy shared by all modules."""


class BoselabError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(BoselabError, ValueError):
    """Invalid input or domain violation (CLI exit code 2)."""


class SolverError(BoselabError, RuntimeError):
    """Numerical failure: non-convergence, sign change, coarse quadrature (CLI exit code 3)."""
