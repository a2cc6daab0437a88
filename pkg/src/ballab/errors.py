"""Shared exception types."""

from __future__ import annotations


class FormatError(ValueError):
    """A text input (graph, group, labeling, or coordinate file) is malformed.

    Carries the 1-based line number when the error is tied to a line.
    """

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class BoundExceededError(ValueError):
    """An exhaustive computation would exceed its configured work bound."""


class InternalCheckError(RuntimeError):
    """A self-verification failed; this signals a bug, not a user error."""
