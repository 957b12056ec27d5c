"""Diagnostic records shared by the parser and the validation rules."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """A single coded finding.

    ``locus`` names what the finding is about: a section path, a requirement
    id, a function number, a sign-off role, or ``project-header``.  Parse
    diagnostics additionally carry the 1-based ``line`` in the source text.
    """

    code: str
    severity: Severity
    message: str
    locus: str
    line: int | None = None

    def text(self) -> str:
        """One-line report form: ``SEVERITY CODE locus: message``."""
        return f"{self.severity.value.upper()} {self.code} {self.locus}: {self.message}"


def to_json(diagnostics: list[Diagnostic]) -> str:
    """Serialize a diagnostic list to a JSON array (stable field order)."""
    return json.dumps(
        [
            {
                "code": d.code,
                "severity": d.severity.value,
                "locus": d.locus,
                "message": d.message,
            }
            for d in diagnostics
        ],
        ensure_ascii=False,
        indent=2,
    )
