"""Exception types shared across the package."""


class GammoidError(Exception):
    """Base class for every error raised by this package."""


class InputError(GammoidError, ValueError):
    """A caller-supplied value violates a documented precondition."""


class GroundMismatchError(InputError):
    """Two objects that must share a ground set do not."""


class DependentSetError(GammoidError):
    """A routing was requested for a start set that admits none.

    Raised by maximal-routing lookups; it signals that the start set is
    dependent in the represented matroid.
    """


class CyclicDigraphError(GammoidError):
    """The operation requires an acyclic digraph but was given a cyclic one."""


class SingularMinorError(GammoidError):
    """A base minor that must be invertible has determinant zero."""


class OracleLimitError(GammoidError):
    """The instance exceeds the exact-arithmetic size guardrail."""


class ParseError(GammoidError):
    """A text input could not be parsed; carries the offending line number."""

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        self.message = message
        super().__init__(f"line {line_number}: {message}")
