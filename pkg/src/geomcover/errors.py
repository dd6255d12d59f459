"""Shared exception types, mapped onto CLI exit codes by the front end."""


class ParameterError(ValueError):
    """Caller passed out-of-range or inconsistent arguments."""


class ParseError(ValueError):
    """Malformed instance or spec document; message carries the location."""


class InfeasibleInstanceError(RuntimeError):
    """Some point is covered by no object, so no cover exists."""


class ConstructionFailureError(RuntimeError):
    """A randomized geometric structure failed its contract after all retries."""


class ConstantsError(RuntimeError):
    """A verified bound did not hold with the configured constants."""
