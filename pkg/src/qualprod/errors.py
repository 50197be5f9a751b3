"""Exception hierarchy shared by all modules."""


class QualprodError(Exception):
    """Base class for library errors."""


class DimensionError(QualprodError, ValueError):
    """Shapes are incompatible with the requested operation."""


class DomainError(QualprodError, ValueError):
    """An argument lies outside the operation's domain."""


class PreconditionError(QualprodError, ValueError):
    """A documented precondition on the input does not hold."""


class ResourceError(QualprodError, RuntimeError):
    """An enumeration or dimension bound was exceeded."""

    def __init__(self, message: str, bound: int | None = None):
        super().__init__(message)
        self.bound = bound


class InternalError(QualprodError, AssertionError):
    """Two routes that must agree did not; always a library defect."""
