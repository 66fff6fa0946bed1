"""Exception types shared across modules."""


class CapacityError(RuntimeError):
    """A brute-force enumeration would exceed its configured cap."""


class PreconditionError(ValueError):
    """An operation was called outside the hypotheses it relies on."""


class ProvisoError(PreconditionError):
    """A count function was evaluated where it is undefined."""


class ScopeError(ValueError):
    """The requested combination is outside what the oracles cover."""


class InvariantViolation(AssertionError):
    """A property that must hold on every input failed."""
