"""Exception hierarchy shared by every module."""

from __future__ import annotations


class InfimaxError(Exception):
    """Base class for all library errors."""


class IndexListError(InfimaxError, ValueError):
    """Malformed index list text or an index outside the positive integers."""


class InsufficientDepthError(InfimaxError):
    """A truncated index list ran out before the computation was finished."""

    def __init__(self, needed: int, available: int):
        self.needed = needed
        self.available = available
        super().__init__(
            f"insufficient index depth: need index {needed}, list has {available}"
        )


class WordTooLongError(InfimaxError):
    """A materialized word would exceed the configured length cap."""


class PathError(InfimaxError, ValueError):
    """An edge list violates the consistency rules of the automaton."""


class RecoveryError(InfimaxError):
    """Base class for failures while recovering a path from a symbol window."""


class NoMatchError(RecoveryError):
    """The window cannot come from the sequence space of the index list."""


class WindowTooShortError(RecoveryError):
    """The window is consistent but too short to pin down the path."""


class AmbiguousRecoveryError(RecoveryError):
    """More than one path matched; this contradicts uniqueness and signals a bug."""


class ConvergenceError(InfimaxError):
    """The covector could not be certified to the requested tolerance."""

    def __init__(self, message: str, achieved: float):
        self.achieved = achieved
        super().__init__(f"{message} (achieved err {achieved:.3e})")


class SignViolationError(InfimaxError):
    """A propagated covector left the cone of sign pattern (-, -, +)."""

    def __init__(self, k: int, vector):
        self.k = k
        self.vector = tuple(vector)
        super().__init__(f"sign pattern violated at level {k}: {self.vector}")


class OrderingError(InfimaxError):
    """Endpoint or parameter ordering failed, usually from an inaccurate covector."""


class CapExceededError(InfimaxError):
    """A configured size cap (paths, interval components) was exceeded."""
