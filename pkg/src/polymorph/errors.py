"""Exception hierarchy shared by all modules."""


class PolymorphError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(PolymorphError, ValueError):
    """An argument violates an operation's documented precondition."""


class SizeLimitError(PolymorphError, ValueError):
    """A request exceeds the arity or enumeration budget of an operation."""


class FormatError(PreconditionError):
    """Malformed truth-table text."""
