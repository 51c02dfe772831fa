"""Diagnostic records shared by the parser, the graph builder and the converters."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Severity(str, enum.Enum):
    WARNING = "warning"
    ERROR = "error"


class Code(str, enum.Enum):
    """Fixed enumeration of diagnostic codes.

    Parser: MALFORMED_LINE, UNRECOGNIZED_LINE, DUPLICATE_ID, DANGLING_REFERENCE.
    Graph: UNKNOWN_TYPE, CYCLIC_THEME, THEME_ONLY_LOCALIZATION, MODIFIER_ONLY_EVENT.
    Conversion: UNRESOLVED_THEME, UNRESOLVED_CAUSE, UNMAPPED_TYPE, UNREALIZED_ROLE,
    GRANULARITY, PATHWAY_EVENT, DANGLING_LOCATION.
    UniProt: LOOKUP_FAILED.  Batch driver: LAYOUT_CONFLICT.
    """

    MALFORMED_LINE = "MALFORMED_LINE"
    UNRECOGNIZED_LINE = "UNRECOGNIZED_LINE"
    DUPLICATE_ID = "DUPLICATE_ID"
    DANGLING_REFERENCE = "DANGLING_REFERENCE"
    UNKNOWN_TYPE = "UNKNOWN_TYPE"
    CYCLIC_THEME = "CYCLIC_THEME"
    THEME_ONLY_LOCALIZATION = "THEME_ONLY_LOCALIZATION"
    MODIFIER_ONLY_EVENT = "MODIFIER_ONLY_EVENT"
    UNRESOLVED_THEME = "UNRESOLVED_THEME"
    UNRESOLVED_CAUSE = "UNRESOLVED_CAUSE"
    UNMAPPED_TYPE = "UNMAPPED_TYPE"
    UNREALIZED_ROLE = "UNREALIZED_ROLE"
    GRANULARITY = "GRANULARITY"
    PATHWAY_EVENT = "PATHWAY_EVENT"
    DANGLING_LOCATION = "DANGLING_LOCATION"
    LOOKUP_FAILED = "LOOKUP_FAILED"
    LAYOUT_CONFLICT = "LAYOUT_CONFLICT"


# codes a converter uses when an event leaves no trace in the output model
DROP_CODES = frozenset(
    {
        Code.UNRESOLVED_THEME,
        Code.THEME_ONLY_LOCALIZATION,
        Code.MODIFIER_ONLY_EVENT,
        Code.UNMAPPED_TYPE,
    }
)


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: Code
    line: int | None
    message: str
    source: str | None = None
    ref: str | None = None
    dropped: bool = False

    def __str__(self) -> str:
        where = self.source or ""
        if self.line is not None:
            where = f"{where}:{self.line}" if where else f"line {self.line}"
        prefix = f"{where}: " if where else ""
        return f"{prefix}{self.severity.value} {self.code.value}: {self.message}"

    def to_dict(self) -> dict:
        return {
            "severity": self.severity.value,
            "code": self.code.value,
            "line": self.line,
            "source": self.source,
            "ref": self.ref,
            "dropped": self.dropped,
            "message": self.message,
        }


# the parser-facing name used throughout the public API
ParseDiagnostic = Diagnostic


def warning(code: Code, message: str, line: int | None = None, **kw) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, line, message, **kw)


def error(code: Code, message: str, line: int | None = None, **kw) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, line, message, **kw)
