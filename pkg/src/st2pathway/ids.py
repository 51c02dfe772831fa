"""Identifier helpers: numeric-aware ordering and SBML-safe sanitizing."""

from __future__ import annotations

import re
from typing import Iterable

_DIGITS = re.compile(r"(\d+)")
_NON_ALNUM = re.compile(r"[^0-9a-z]+")
_NON_ID = re.compile(r"[^0-9A-Za-z_]")


def natural_key(identifier: str) -> tuple:
    """Sort key under which T2 < T10 and T5 < T5_in_nucleus."""
    parts = _DIGITS.split(identifier)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts))


def natural_sorted(ids: Iterable[str]) -> list[str]:
    return sorted(ids, key=natural_key)


def compartment_id(text: str) -> str:
    """Lowercase, collapse non-alphanumerics to ``_``, guard a leading digit."""
    cid = _NON_ALNUM.sub("_", text.strip().lower()).strip("_") or "compartment"
    if cid[0].isdigit():
        cid = "c_" + cid
    return cid


def sbml_id(text: str) -> str:
    """Coerce an arbitrary string (e.g. a document stem) into an SBML SId."""
    sid = _NON_ID.sub("_", text) or "model"
    if sid[0].isdigit():
        sid = "m_" + sid
    return sid


def unique_id(base: str, taken) -> str:
    """Return ``base`` or ``base2``, ``base3`` ... whichever is free in ``taken``."""
    if base not in taken:
        return base
    k = 2
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"
