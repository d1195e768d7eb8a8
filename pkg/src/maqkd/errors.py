"""Exception types shared across the package."""


class GeometryDomainError(ValueError):
    """Raised when a geometric quantity is requested outside its domain."""


class VisibilityError(RuntimeError):
    """Raised when a required ground-satellite link is below the horizon."""


class QuadratureError(RuntimeError):
    """Raised when an adaptive integral does not reach its tolerance."""


class SimulationStallError(RuntimeError):
    """Raised when the event queue empties before the sample target is met."""


class ConfigError(ValueError):
    """Raised for invalid or unknown configuration keys."""
