"""Domain error type with stable machine-readable codes."""

from __future__ import annotations


class SrsError(ValueError):
    """Raised by project operations when a precondition is violated.

    ``code`` is a stable kebab-case token (``duplicate-id``, ``unknown-path``,
    ...) reused verbatim by the CLI and the HTTP service, so callers can
    dispatch on it without parsing the message.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message

    def __str__(self) -> str:
        return self.message
