"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class TwistInvError(Exception):
    """Base class for all library errors."""


class SchemaError(TwistInvError, ValueError):
    """Malformed descriptor or input data (CLI exit status 2)."""


class PreconditionError(TwistInvError, ValueError):
    """A mathematical hypothesis required by a computation does not hold (exit 3)."""


class CrossCheckError(TwistInvError, AssertionError):
    """Two independent routes to the same quantity disagree (exit 4)."""
