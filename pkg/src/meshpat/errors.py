"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called with inputs outside its contract."""


class BoundExceeded(PreconditionError):
    """A brute-force routine was asked to work beyond its configured size bound."""


class TheoremViolation(RuntimeError):
    """Brute force disagreed with the enclosed-diagonal criterion.

    Never expected; raised loudly so it cannot be mistaken for an ordinary
    negative answer.
    """
