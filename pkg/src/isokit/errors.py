"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """A desk-scale guard (memory, enumeration size, recursion depth) tripped."""


class Graph6Error(ValueError):
    """Malformed graph6 input.  ``offset`` is the byte position of the fault."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class GraphFormatError(ValueError):
    """Malformed JSON graph input."""


class RecursionGuardError(RuntimeError):
    """A recursion depth guard tripped.  ``diagnostic`` describes the state."""

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}
