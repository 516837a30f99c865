"""Exception hierarchy shared by every module."""


class SsgBocaError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(SsgBocaError, ValueError):
    """An object does not have the shape an operation requires."""


class ValidationError(SsgBocaError, ValueError):
    """An instance or automaton violates a well-formedness rule."""


class PreconditionError(SsgBocaError, ValueError):
    """A semantic precondition of an operation does not hold."""


class BudgetExceeded(SsgBocaError, RuntimeError):
    """An exhaustive search ran out of its configured budget."""
