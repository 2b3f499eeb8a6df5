"""Exception types raised across the package."""


class TetrablockError(ValueError):
    """Base class for every error raised by this package."""


class PreconditionError(TetrablockError):
    """An argument violates a documented precondition."""


class PoleError(TetrablockError):
    """A linear fractional expression was evaluated at (or too near) its pole."""


class NotInDomainError(TetrablockError):
    """A point expected to lie in the open tetrablock does not."""
