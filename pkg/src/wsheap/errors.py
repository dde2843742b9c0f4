"""Exception types shared by every structure in the package."""


class HeapError(Exception):
    """Base class for errors raised by the heap structures."""


class Empty(HeapError, IndexError):
    """Raised when popping or peeking an empty structure."""


class KeyIncrease(HeapError, ValueError):
    """Raised when a decrease-key target is larger than the current key."""


class Dead(HeapError, LookupError):
    """Raised when a handle refers to an element that was already popped."""


class SameSet(HeapError, ValueError):
    """Raised when linking a representative with itself."""


class NotRepresentative(HeapError, ValueError):
    """Raised when linking a node that is not the root of its set."""


class ParseError(HeapError, ValueError):
    """Malformed trace or graph input. Carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleParameters(HeapError, ValueError):
    """Raised by generators when asked for a structure that cannot exist."""
