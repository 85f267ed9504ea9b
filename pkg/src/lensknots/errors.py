from typing import Optional

__all__ = [
    "LensknotsError",
    "InvalidInput",
    "DegenerateEvaluation",
    "InfiniteArithmetic",
]


class LensknotsError(ValueError):
    """Base class for every domain error raised by lensknots. The command
    line maps these to exit status 1."""

    def __init__(self, message: str, precondition: Optional[str] = None):
        super().__init__(message)
        self.precondition = precondition

    def describe(self) -> str:
        name = type(self).__name__
        if self.precondition:
            return f"{name} [{self.precondition}]: {self}"
        return f"{name}: {self}"


class InvalidInput(LensknotsError):
    """An operation was called outside of its preconditions."""


class DegenerateEvaluation(LensknotsError):
    """A continued fraction needed the reciprocal of zero."""


class InfiniteArithmetic(LensknotsError):
    """Arithmetic was attempted on the slope value 1/0."""
