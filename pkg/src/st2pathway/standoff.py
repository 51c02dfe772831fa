"""Parser for BioNLP shared-task standoff files (.a1, .a2, .ann).

Only text-bound (``T``) and event (``E``) lines carry model content.
Modifier, attribute, normalization, equivalence and comment lines are
classified and kept aside so nothing in the input goes unaccounted for.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

from .diagnostics import Code, Diagnostic, error, warning
from .ids import natural_key

ROLES = (
    "Theme",
    "Cause",
    "Product",
    "Site",
    "AtLoc",
    "FromLoc",
    "ToLoc",
    "Participant",
    "Complex",
)
_ROLE_LOOKUP = {r.lower(): r for r in ROLES}

_TRIGGER_ID = re.compile(r"T[0-9]+")
_EVENT_ID = re.compile(r"E[0-9]+")
_REF_ID = re.compile(r"[TE][0-9]+")
_ROLE_NAME = re.compile(r"([A-Za-z_]+?)([0-9]*)")
_OFFSET = re.compile(r"[0-9]+")

IGNORED_KINDS = {
    "M": "modifier",
    "A": "attribute",
    "N": "normalization",
    "*": "equivalence",
    "#": "comment",
}


@dataclass(frozen=True)
class TextBoundAnnotation:
    id: str
    ann_type: str
    start: int
    end: int
    text: str

    def to_standoff(self) -> str:
        return f"{self.id}\t{self.ann_type} {self.start} {self.end}\t{self.text}"


@dataclass(frozen=True)
class RoleBinding:
    role: str
    index: int
    target: str

    @property
    def label(self) -> str:
        return self.role if self.index == 1 else f"{self.role}{self.index}"


@dataclass(frozen=True)
class EventAnnotation:
    id: str
    event_type: str
    trigger: str
    roles: tuple[RoleBinding, ...] = ()

    def targets(self, role: str) -> list[str]:
        return [b.target for b in self.roles if b.role == role]

    def has_role(self, role: str) -> bool:
        return any(b.role == role for b in self.roles)

    def to_standoff(self) -> str:
        args = " ".join(f"{b.label}:{b.target}" for b in self.roles)
        head = f"{self.id}\t{self.event_type}:{self.trigger}"
        return f"{head} {args}" if args else head


@dataclass(frozen=True)
class IgnoredLine:
    line: int
    kind: str
    raw: str


Parsed = Union[TextBoundAnnotation, EventAnnotation, IgnoredLine, Diagnostic]


@dataclass
class StandoffDocument:
    doc_id: str
    triggers: dict[str, TextBoundAnnotation] = field(default_factory=dict)
    events: dict[str, EventAnnotation] = field(default_factory=dict)
    ignored_lines: list[IgnoredLine] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    # annotation-id -> (filename, line number) of its defining line
    locations: dict[str, tuple[str, int]] = field(default_factory=dict)

    def location(self, ann_id: str) -> tuple[str | None, int | None]:
        return self.locations.get(ann_id, (None, None))


def parse_role(name: str) -> tuple[str, int] | None:
    """Split ``Theme2`` into ``("Theme", 2)``; None for unknown role names."""
    m = _ROLE_NAME.fullmatch(name)
    if not m:
        return None
    role = _ROLE_LOOKUP.get(m.group(1).lower())
    if role is None:
        return None
    index = int(m.group(2)) if m.group(2) else 1
    if index < 1:
        return None
    return role, index


def _malformed(line_number: int, message: str) -> Diagnostic:
    return error(Code.MALFORMED_LINE, message, line_number)


def _parse_textbound(line: str, line_number: int) -> Parsed:
    # id, type, start, end, then free text; tabs or runs of spaces between fields
    fields = line.split(None, 4)
    if len(fields) < 5:
        return _malformed(line_number, f"text-bound line needs 5 fields, got {len(fields)}")
    ann_id, ann_type, start, end, text = fields
    if not _TRIGGER_ID.fullmatch(ann_id):
        return _malformed(line_number, f"bad text-bound id {ann_id!r}")
    if not (_OFFSET.fullmatch(start) and _OFFSET.fullmatch(end)):
        return _malformed(line_number, f"non-numeric offsets {start!r} {end!r}")
    start_i, end_i = int(start), int(end)
    if start_i >= end_i:
        return _malformed(line_number, f"empty or inverted span {start_i}..{end_i}")
    text = text.strip()
    if not text:
        return _malformed(line_number, "empty annotated text")
    return TextBoundAnnotation(ann_id, ann_type, start_i, end_i, text)


def _parse_event(line: str, line_number: int) -> Parsed:
    fields = line.split()
    if len(fields) < 2:
        return _malformed(line_number, "event line needs a Type:Trigger field")
    ann_id, head, *args = fields
    if not _EVENT_ID.fullmatch(ann_id):
        return _malformed(line_number, f"bad event id {ann_id!r}")
    event_type, sep, trigger = head.partition(":")
    if not sep or not event_type or not _TRIGGER_ID.fullmatch(trigger):
        return _malformed(line_number, f"bad Type:Trigger field {head!r}")
    roles = []
    for arg in args:
        name, sep, target = arg.partition(":")
        if not sep:
            return _malformed(line_number, f"bad role argument {arg!r}")
        parsed = parse_role(name)
        if parsed is None:
            return _malformed(line_number, f"unknown role {name!r}")
        if not _REF_ID.fullmatch(target):
            return _malformed(line_number, f"bad role target {target!r}")
        roles.append(RoleBinding(parsed[0], parsed[1], target))
    return EventAnnotation(ann_id, event_type, trigger, tuple(roles))


def parse_line(line: str, line_number: int) -> Parsed:
    """Classify one physical line (newline already stripped)."""
    line = line.rstrip("\r\n")
    stripped = line.strip()
    if not stripped:
        return IgnoredLine(line_number, "blank", line)
    first = stripped[0]
    if first == "T":
        return _parse_textbound(stripped, line_number)
    if first == "E":
        return _parse_event(stripped, line_number)
    if first in IGNORED_KINDS:
        return IgnoredLine(line_number, IGNORED_KINDS[first], line)
    return error(Code.UNRECOGNIZED_LINE, f"unrecognized annotation line {stripped[:40]!r}", line_number)


def parse_document(doc_id: str, sources: Iterable[tuple[str, str]]) -> StandoffDocument:
    """Merge the lines of one document's files into a StandoffDocument.

    ``sources`` is a sequence of ``(filename, content)``: one ``.ann`` file,
    an ``.a1``/``.a2`` pair, or a single file.  Problems are reported as
    diagnostics; nothing here raises on bad content.
    """
    doc = StandoffDocument(doc_id)
    for filename, content in sources:
        for number, raw in enumerate(content.splitlines(), start=1):
            item = parse_line(raw, number)
            if isinstance(item, Diagnostic):
                doc.diagnostics.append(_with_source(item, filename))
            elif isinstance(item, IgnoredLine):
                if item.kind != "blank":
                    doc.ignored_lines.append(item)
            else:
                table = doc.triggers if isinstance(item, TextBoundAnnotation) else doc.events
                if item.id in table:
                    first_file, first_line = doc.locations[item.id]
                    doc.diagnostics.append(
                        error(
                            Code.DUPLICATE_ID,
                            f"duplicate id {item.id} (first defined at {first_file}:{first_line})",
                            number,
                            source=filename,
                            ref=item.id,
                        )
                    )
                    continue
                table[item.id] = item
                doc.locations[item.id] = (filename, number)
    _check_references(doc)
    return doc


def _with_source(diag: Diagnostic, filename: str) -> Diagnostic:
    return Diagnostic(diag.severity, diag.code, diag.line, diag.message, filename, diag.ref)


def _check_references(doc: StandoffDocument) -> None:
    for ev in doc.events.values():
        source, line = doc.location(ev.id)
        if ev.trigger not in doc.triggers:
            doc.diagnostics.append(
                warning(
                    Code.DANGLING_REFERENCE,
                    f"{ev.id}: trigger {ev.trigger} is not defined",
                    line,
                    source=source,
                    ref=ev.id,
                )
            )
        for binding in ev.roles:
            if binding.target not in doc.triggers and binding.target not in doc.events:
                doc.diagnostics.append(
                    warning(
                        Code.DANGLING_REFERENCE,
                        f"{ev.id}: {binding.label} target {binding.target} is not defined",
                        line,
                        source=source,
                        ref=ev.id,
                    )
                )


def to_standoff(doc: StandoffDocument) -> str:
    """Serialize triggers then events, each in natural id order."""
    lines = [doc.triggers[k].to_standoff() for k in sorted(doc.triggers, key=natural_key)]
    lines += [doc.events[k].to_standoff() for k in sorted(doc.events, key=natural_key)]
    return "\n".join(lines) + ("\n" if lines else "")


STANDOFF_SUFFIXES = (".ann", ".a1", ".a2")


def read_document(*paths: str | Path, doc_id: str | None = None) -> StandoffDocument:
    """Read and parse one document from its files.  I/O errors propagate."""
    paths = [Path(p) for p in paths]
    if not paths:
        raise ValueError("read_document needs at least one file")
    doc_id = doc_id or paths[0].stem
    sources = [(p.name, p.read_text(encoding="utf-8")) for p in paths]
    return parse_document(doc_id, sources)
