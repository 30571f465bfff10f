"""Exception types shared across the package."""


class RelmassError(Exception):
    """Base class for all package errors."""


class ValidationError(RelmassError, ValueError):
    """Invalid argument or inconsistent input data."""


class SizeError(ValidationError):
    """Problem size outside the supported explicit-construction range."""


class ConnectivityError(ValidationError):
    """Graph (or generated subgroup) is not connected."""


class DomainError(ValidationError):
    """Numeric argument outside the mathematical domain of an operation."""


class NumericalError(RelmassError):
    """A numeric computation failed to reach its accuracy target."""


class NumericalIntegrityError(NumericalError):
    """A computed quantity violated a hard invariant (e.g. probability far outside [0,1])."""


class EstimationError(RelmassError):
    """A Monte Carlo estimator could not produce an estimate."""
