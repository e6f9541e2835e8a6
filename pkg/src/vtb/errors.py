"""Exception hierarchy shared by every module.

The CLI maps any :class:`VTBError` to exit status 65 and prints the class name.
"""

from __future__ import annotations


class VTBError(Exception):
    """Base class for all domain errors."""


class WordSyntaxError(VTBError):
    """Malformed word-notation or diagram text."""

    name = "SyntaxError"


class TypingError(VTBError):
    def __init__(self, position: int, width: int, token: str):
        super().__init__(f"letter {position} ({token}) illegal at width {width}")
        self.position = position
        self.width = width
        self.token = token


class WidthMismatch(VTBError):
    pass


class NotInvertible(VTBError):
    pass


class WidthLimitExceeded(VTBError):
    pass


class IllegalConjugator(VTBError):
    pass


class BadSite(VTBError):
    pass


class WidthTooSmall(VTBError):
    pass


class PatternNotFound(VTBError):
    pass


class NotSquare(VTBError):
    pass


class GraphTooLarge(VTBError):
    pass


class HasVertices(VTBError):
    pass


class IllegalMoveAt(VTBError):
    def __init__(self, step: int, reason: str):
        super().__init__(f"move {step} cannot be applied: {reason}")
        self.step = step
        self.reason = reason


class ArityError(VTBError):
    pass


class OrientationError(VTBError):
    pass


class NotRegular(VTBError):
    pass


def error_name(exc: BaseException) -> str:
    return getattr(exc, "name", type(exc).__name__)
