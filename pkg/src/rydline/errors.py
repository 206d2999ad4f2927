"""Exception hierarchy shared by every rydline module."""


class RydlineError(Exception):
    """Base class for all rydline errors."""


class DomainError(RydlineError, ValueError):
    """An argument lies outside the domain of a physical formula."""


class DimensionError(RydlineError, TypeError):
    """Quantities of incompatible dimension were combined."""


class UnitParseError(RydlineError, ValueError):
    """A lab-unit label or quantity string could not be parsed."""


class ConfigError(RydlineError, ValueError):
    """A run configuration is malformed."""


class TruncationError(RydlineError, ArithmeticError):
    """The truncated Fock space is too small for the simulated dynamics."""


class IntegrationError(RydlineError, ArithmeticError):
    """The adaptive integrator failed to reach the requested end time."""
