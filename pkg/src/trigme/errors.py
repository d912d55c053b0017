"""Exception types shared across the package."""


class TrigmeError(Exception):
    """Base class for all package errors."""


class ValidationError(TrigmeError, ValueError):
    """An input failed a structural or numerical invariant."""


class ParseError(TrigmeError, ValueError):
    """A state document could not be parsed."""


class InternalInvariantError(TrigmeError, RuntimeError):
    """A mathematically guaranteed invariant failed.

    Raised when a computation breaches a property that holds for every
    valid input (for example a polygamy inequality), which indicates a
    bug or a tolerance misconfiguration rather than bad user data.
    """
