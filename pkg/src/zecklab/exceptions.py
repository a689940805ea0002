"""Exception types shared across the package."""


class BudgetExceeded(ValueError):
    """An exhaustive computation would exceed its size budget."""


class SequenceRangeError(ValueError):
    """A value lies beyond the generated part of a sequence."""


class VerificationError(RuntimeError):
    """An internal consistency check or oracle comparison failed."""
