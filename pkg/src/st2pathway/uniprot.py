"""Name to UniProt accession lookup, offline (TSV) or over the REST API."""

from __future__ import annotations

import csv
import json
import logging
import os
import re
import threading
import urllib.parse
import urllib.request
from dataclasses import dataclass
from functools import singledispatch
from pathlib import Path

from .diagnostics import Code, Diagnostic, warning

log = logging.getLogger(__name__)

# official UniProtKB accession grammar
ACCESSION_RE = re.compile(r"^(?:[OPQ][0-9][A-Z0-9]{3}[0-9]|[A-NR-Z][0-9](?:[A-Z][A-Z0-9]{2}[0-9]){1,2})$")
URI_PREFIX = "http://identifiers.org/uniprot/"
DEFAULT_ENDPOINT = "https://rest.uniprot.org/uniprotkb/search"
ENDPOINT_ENV = "ST2PATHWAY_UNIPROT_URL"
TSV_COLUMNS = ("name", "accession", "preferred_name", "gene_names", "synonyms")


@dataclass(frozen=True)
class UniprotRecord:
    accession: str
    preferred_name: str = ""
    gene_names: tuple[str, ...] = ()
    synonyms: tuple[str, ...] = ()

    def __post_init__(self):
        if not ACCESSION_RE.match(self.accession):
            raise ValueError(f"not a UniProt accession: {self.accession!r}")

    @property
    def uri(self) -> str:
        return URI_PREFIX + self.accession


@dataclass(frozen=True)
class Match:
    record: UniprotRecord
    # False when only a synonym matched
    exact: bool


class LookupFailed(Exception):
    """Raised by resolvers when the backing service cannot be reached."""


def _split(cell: str | None) -> tuple[str, ...]:
    return tuple(p.strip() for p in (cell or "").split(";") if p.strip())


class OfflineResolver:
    """Lookups against a TSV with columns name, accession, preferred_name, gene_names, synonyms.

    List cells are ``;``-separated.  Matching tries the ``name`` column
    exactly, then case-insensitively, then preferred/gene names, then synonyms.
    """

    def __init__(self, rows: list[tuple[str, UniprotRecord]]):
        self.rows = rows

    @classmethod
    def load(cls, path: str | Path) -> "OfflineResolver":
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh, delimiter="\t")
            missing = set(TSV_COLUMNS) - set(reader.fieldnames or ())
            if missing:
                raise ValueError(f"{path}: missing columns {sorted(missing)}")
            rows = [
                (
                    row["name"].strip(),
                    UniprotRecord(
                        row["accession"].strip(),
                        (row["preferred_name"] or "").strip(),
                        _split(row["gene_names"]),
                        _split(row["synonyms"]),
                    ),
                )
                for row in reader
                if (row.get("name") or "").strip()
            ]
        return cls(rows)

    def resolve(self, name: str) -> Match | None:
        for key, record in self.rows:
            if key == name:
                return Match(record, True)
        folded = name.casefold()
        for key, record in self.rows:
            if key.casefold() == folded:
                return Match(record, True)
        for _, record in self.rows:
            if folded in {n.casefold() for n in (record.preferred_name, *record.gene_names) if n}:
                return Match(record, True)
        for _, record in self.rows:
            if folded in {s.casefold() for s in record.synonyms}:
                return Match(record, False)
        return None


class NetworkResolver:
    """Queries the UniProt REST search endpoint; answers are cached per instance."""

    def __init__(self, endpoint: str | None = None, timeout: float = 10.0):
        self.endpoint = endpoint or os.environ.get(ENDPOINT_ENV, DEFAULT_ENDPOINT)
        self.timeout = timeout
        self._cache: dict[str, Match | None] = {}
        self._lock = threading.Lock()

    def _fetch(self, name: str) -> dict:
        query = f'(protein_name:"{name}" OR gene_exact:"{name}") AND reviewed:true'
        params = urllib.parse.urlencode(
            {"query": query, "format": "json", "size": "1", "fields": "accession,protein_name,gene_names"}
        )
        try:
            with urllib.request.urlopen(f"{self.endpoint}?{params}", timeout=self.timeout) as resp:
                return json.load(resp)
        except (OSError, ValueError) as exc:
            raise LookupFailed(f"UniProt request for {name!r} failed: {exc}") from exc

    def resolve(self, name: str) -> Match | None:
        with self._lock:
            if name in self._cache:
                return self._cache[name]
        match = _parse_search(self._fetch(name), name)
        with self._lock:
            self._cache[name] = match
        return match


def _parse_search(payload: dict, name: str) -> Match | None:
    results = payload.get("results") or []
    if not results:
        return None
    top = results[0]
    desc = top.get("proteinDescription", {})
    preferred = desc.get("recommendedName", {}).get("fullName", {}).get("value", "")
    alternates = tuple(
        alt.get("fullName", {}).get("value", "") for alt in desc.get("alternativeNames", []) if alt.get("fullName")
    )
    genes = tuple(g["geneName"]["value"] for g in top.get("genes", []) if "geneName" in g)
    synonyms = alternates + tuple(s["value"] for g in top.get("genes", []) for s in g.get("synonyms", []))
    record = UniprotRecord(top["primaryAccession"], preferred, genes, synonyms)
    folded = name.casefold()
    exact = folded in {n.casefold() for n in (preferred, *genes) if n}
    return Match(record, exact)


def make_resolver(source):
    """Build a resolver from ``"tsv:<path>"``, ``"net"`` or an existing resolver object."""
    if source is None or source == "off":
        return None
    if hasattr(source, "resolve"):
        return source
    if isinstance(source, str) and source.startswith("tsv:"):
        return OfflineResolver.load(source[4:])
    if source == "net":
        return NetworkResolver()
    raise ValueError(f"unknown UniProt source {source!r}; expected off, tsv:<path> or net")


def lookup(name: str, resolver, diagnostics: list[Diagnostic] | None = None) -> Match | None:
    if not name:
        raise ValueError("lookup needs a non-empty name")
    try:
        return resolver.resolve(name)
    except LookupFailed as exc:
        log.warning("%s", exc)
        if diagnostics is not None:
            diagnostics.append(warning(Code.LOOKUP_FAILED, str(exc)))
        return None


def _note_lines(record: UniprotRecord) -> list[str]:
    lines = [f"UniProt: {record.accession}"]
    if record.preferred_name:
        lines.append(f"Preferred name: {record.preferred_name}")
    if record.synonyms:
        lines.append("Alternate names: " + ", ".join(record.synonyms))
    if record.gene_names:
        lines.append("Gene names: " + ", ".join(record.gene_names))
    return lines


@singledispatch
def annotate(model, resolver, diagnostics: list[Diagnostic] | None = None):
    """Attach UniProt identifiers to every resolvable species/entity; additive and idempotent."""
    raise TypeError(f"unsupported model type {type(model).__name__}")


def _register():
    from .biopax import ENTITY_CLASSES, BiopaxElement, BiopaxModel, Literal, Ref
    from .sbml import SbmlModel

    @annotate.register(SbmlModel)
    def _(model: SbmlModel, resolver, diagnostics=None):
        if resolver is None:
            return model
        for sp in model.species.values():
            match = lookup(sp.name, resolver, diagnostics) if sp.name else None
            if match is None:
                continue
            term = ("is", match.record.uri)
            if term not in sp.cv_terms:
                sp.cv_terms.append(term)
            for line in _note_lines(match.record):
                if line not in sp.notes:
                    sp.notes.append(line)
        return model

    @annotate.register(BiopaxModel)
    def _(model: BiopaxModel, resolver, diagnostics=None):
        if resolver is None:
            return model
        for el in list(model.elements.values()):
            if el.class_name not in ENTITY_CLASSES or not el.name:
                continue
            match = lookup(el.name, resolver, diagnostics)
            if match is None:
                continue
            cls = "UnificationXref" if match.exact else "RelationshipXref"
            xid = f"{cls}_uniprot_{match.record.accession}"
            if xid not in model.elements:
                xref = model.add(BiopaxElement(xid, cls))
                xref.add("db", Literal("UniProt"))
                xref.add("id", Literal(match.record.accession))
            el.add("xref", Ref(xid))
        return model


_register()
