"""Exception hierarchy shared by every coxkit module."""


class CoxkitError(Exception):
    """Base class for domain errors (the CLI maps these to exit status 1)."""


class GraphError(CoxkitError, ValueError):
    """Malformed graph document or invalid graph construction."""


class ContextMismatch(CoxkitError, ValueError):
    pass


class TruncatedEnumeration(CoxkitError):
    """A brute-force enumeration hit its element-count bound."""


class NotSpherical(CoxkitError, ValueError):
    pass


class RootOutOfRange(CoxkitError, KeyError):
    """A root was required that is not in the enumerated (possibly truncated) root system."""

    def __str__(self):
        return Exception.__str__(self)


class InternalInvariantError(CoxkitError, AssertionError):
    """Raised when a mathematically guaranteed invariant fails; indicates a bug."""
