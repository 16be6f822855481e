"""Exception hierarchy; the CLI maps each class to a stable exit code."""


class MonodromyError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MonodromyError, ValueError):
    """Malformed input document or value (CLI exit code 2)."""


class ShapeError(MonodromyError, ValueError):
    """Dimension mismatch between matrices, subspaces or tuples (exit code 2)."""


class PreconditionError(MonodromyError, ValueError):
    """A mathematical hypothesis of an operation does not hold (exit code 3)."""


class SingularMatrixError(PreconditionError):
    """A matrix required to be invertible has zero determinant (exit code 4)."""


class RootOutsideFieldError(PreconditionError):
    """A required eigenvalue is not expressible in the working cyclotomic field."""
