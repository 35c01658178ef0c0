"""Exception hierarchy shared by all clkit modules."""


class ClkitError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ClkitError):
    """Syntax error in a SID file, with 1-based source position."""

    def __init__(self, message, line, column):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class ValidationError(ClkitError):
    """A structurally well-formed SID violates a declaration-level invariant."""


class UndeclaredPredicateError(ValidationError):
    pass


class CapExceededError(ClkitError):
    """A fixpoint or enumeration exceeded its configured resource cap."""

    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count


class UnboundedInstanceError(ClkitError):
    """degree_cutoff was called on an instance with unbounded degree."""


class StatemapMismatchError(ClkitError):
    """Composition of configurations with different state maps."""


class UnboundVariableError(ClkitError):
    """A free variable of a formula is missing from the store."""


class HeapError(ClkitError):
    """Malformed Gaifman heap record."""


class PreconditionError(ClkitError):
    """An operation's documented precondition does not hold."""
