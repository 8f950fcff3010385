"""Exception hierarchy shared by all isoslope modules."""


class IsoslopeError(Exception):
    """Base class for all errors raised by this package."""


class PrecisionError(IsoslopeError):
    """A result could not be certified at the working precision.

    Raised instead of guessing: rank decisions, hull vertices, Hensel
    lifts and divisions refuse to answer when the tracked precision is
    insufficient.
    """


class DocumentError(IsoslopeError):
    """A problem document is malformed or violates the input schema."""


class EnumerationUnavailableError(IsoslopeError):
    """Exact subobject enumeration was requested but the simplicity
    criterion fails, so only Monte-Carlo sampling is offered."""


class NonEffectiveError(IsoslopeError):
    """An operation defined only for effective isocrystals (all slopes
    >= 0) was applied to a non-effective one."""
