"""Exception hierarchy shared by every module."""


class RDeletionError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(RDeletionError, ValueError):
    """Mismatched or invalid subsystem dimensions / indices."""


class CapacityError(RDeletionError, ValueError):
    """Total Hilbert-space dimension exceeds the configured cap."""


class DomainError(RDeletionError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class PreconditionError(RDeletionError, ValueError):
    """An operation's documented precondition does not hold."""


class ParameterError(RDeletionError, ValueError):
    """Invalid numeric or configuration parameter."""
