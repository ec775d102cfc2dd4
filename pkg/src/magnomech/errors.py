class MagnomechError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(MagnomechError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class DegenerateError(MagnomechError):
    """A linear system or conditioning block is singular."""


class StabilityError(MagnomechError):
    """The drift matrix has an eigenvalue with non-negative real part."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NumericalError(MagnomechError):
    """A numerical routine failed to converge."""


class PhysicalityError(MagnomechError):
    """A covariance matrix violates the uncertainty principle beyond tolerance."""


class ConfigurationError(MagnomechError, ValueError):
    """Invalid run configuration, axis or preset name."""
