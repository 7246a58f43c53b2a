"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operands have incompatible or unexpected dimensions."""


class StateError(ValueError):
    """A matrix fails the density-matrix contract (Hermitian, PSD, trace 1)."""


class RepresentationError(ValueError):
    """Representation data is internally inconsistent."""


class ConvergenceError(ArithmeticError):
    """An iterative computation failed to reach its tolerance."""


class PropagationError(RuntimeError):
    """A trajectory sample violated the state invariants."""

    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class ConfigError(ValueError):
    """A scenario configuration file is malformed or out of range."""
