"""Exception hierarchy shared by all widealloc modules."""

from __future__ import annotations


class WideallocError(Exception):
    """Base class for every error raised by the package."""


class InvalidInputError(WideallocError, ValueError):
    """Malformed diagram, allocation, outline, filling or index."""


class ScaleLimitError(WideallocError):
    """An oracle was asked to run beyond its enumeration gate."""


class NotWideError(WideallocError):
    """A construction that needs a wide diagram was given a non-wide one."""


class UnsupportedError(WideallocError):
    """The request is well-formed but outside what the constructor handles."""


class InternalInvariantError(WideallocError, AssertionError):
    """A step that is guaranteed to succeed did not. Always a bug or a finding."""


class InfeasibleExtension(WideallocError):
    """A partial allocation cannot be completed; ``constraint`` names the first failure."""

    def __init__(self, constraint: str):
        super().__init__(constraint)
        self.constraint = constraint
