"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class NtewtError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(NtewtError, ValueError):
    """An argument or specification is outside its valid domain."""


class UsageError(ParameterError):
    """An operation was applied to an input of the wrong kind."""


class FormatError(NtewtError):
    """A serialized file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateResultError(NtewtError, ArithmeticError):
    """A quantity is undefined for the given input (e.g. an all-zero response)."""
