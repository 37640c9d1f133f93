"""Exception types shared across the package."""


class CsresError(Exception):
    """Base class for all package errors."""


class ConfigError(CsresError):
    """Invalid or inconsistent run configuration (CLI exit code 2)."""


class NumericalError(CsresError):
    """Numerical failure: quadrature non-convergence, ill-conditioned
    basis, eigensolver breakdown (CLI exit code 3)."""
