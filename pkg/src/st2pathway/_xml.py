"""Minimal indented XML writer with fixed attribute order.

ElementTree reorders namespace declarations and invents prefixes, which makes
byte-exact output awkward; this writer emits exactly what it is told to.
"""

from __future__ import annotations

import re
from xml.sax.saxutils import escape as _escape

INDENT = "  "


# characters XML 1.0 cannot carry at all
_ILLEGAL = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ufffe\uffff]")


def escape(text: str, entities=None) -> str:
    return _escape(_ILLEGAL.sub("", text), entities or {})


_ATTR_ENTITIES = {'"': "&quot;", "\n": "&#10;", "\r": "&#13;", "\t": "&#9;"}


def _attrs(attrs) -> str:
    return "".join(f' {name}="{escape(str(value), _ATTR_ENTITIES)}"' for name, value in attrs if value is not None)


class XmlWriter:
    def __init__(self):
        self._lines = ['<?xml version="1.0" encoding="UTF-8"?>']
        self._open: list[str] = []

    def _pad(self) -> str:
        return INDENT * len(self._open)

    def start(self, tag: str, attrs=()) -> None:
        self._lines.append(f"{self._pad()}<{tag}{_attrs(attrs)}>")
        self._open.append(tag)

    def end(self, tag: str) -> None:
        opened = self._open.pop()
        assert opened == tag, f"closing {tag} while {opened} is open"
        self._lines.append(f"{self._pad()}</{tag}>")

    def empty(self, tag: str, attrs=()) -> None:
        self._lines.append(f"{self._pad()}<{tag}{_attrs(attrs)}/>")

    def text(self, tag: str, text: str, attrs=()) -> None:
        self._lines.append(f"{self._pad()}<{tag}{_attrs(attrs)}>{escape(text)}</{tag}>")

    def getvalue(self) -> str:
        assert not self._open, f"unclosed elements: {self._open}"
        return "\n".join(self._lines) + "\n"
