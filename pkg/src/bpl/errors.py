"""Exception types shared by every numeric module."""


class BplError(Exception):
    """Base class for all library errors."""


class DomainError(BplError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NonConvergenceError(BplError, RuntimeError):
    """A series or acceleration scheme exhausted its term budget."""


class QuadratureError(BplError, RuntimeError):
    """Adaptive quadrature could not reach the requested tolerance."""
