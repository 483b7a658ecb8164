"""Exception hierarchy for cliffcert."""


class CliffcertError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(CliffcertError, ValueError):
    """Input parameters violate a documented bound."""


class CeilingExceeded(ParameterError):
    """A grid or enumeration would exceed the configured size ceiling."""


class InvariantViolation(CliffcertError, RuntimeError):
    """An internal consistency check failed.

    Raised when a runtime check that should be impossible to trip fails, for
    example a feasible lattice point turning up outside the range that the
    constraint analysis guarantees.
    """
