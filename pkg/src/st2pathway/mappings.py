"""Annotation-type lookup tables: SBO/GO terms for SBML, class names for BioPAX.

Keys are matched case-insensitively with ``_``, ``-`` and spaces ignored, so
``Gene_expression``, ``Gene_Expression`` and ``gene expression`` are one key.

The tables can be dumped to, and reloaded from, a TSV file with the columns
``table``, ``key``, ``value`` and ``label``.  Tables in that file:

* ``entity_sbo``    entity type -> SBO id
* ``event_term``    event type -> SBO or GO id
* ``entity_biopax`` entity type -> BioPAX class
* ``event_biopax``  event type -> BioPAX class
* ``modification``  event type -> ModificationFeature vocabulary term
* ``name_prefix``   event type -> prefix of synthesized product names
"""

from __future__ import annotations

import csv
import enum
import io
import re
from dataclasses import dataclass, field
from pathlib import Path

_TERM_ID = re.compile(r"(SBO|GO):\d{7}")


def normalize_key(name: str) -> str:
    return re.sub(r"[\s_\-]+", "", name).lower()


@dataclass(frozen=True)
class OntologyTerm:
    namespace: str
    identifier: str
    label: str

    def __post_init__(self):
        m = _TERM_ID.fullmatch(self.identifier)
        if not m or m.group(1) != self.namespace:
            raise ValueError(f"bad ontology identifier {self.identifier!r}")

    @property
    def is_sbo(self) -> bool:
        return self.namespace == "SBO"

    @property
    def uri(self) -> str:
        if self.is_sbo:
            return f"http://identifiers.org/biomodels.sbo/{self.identifier}"
        return f"http://identifiers.org/go/{self.identifier}"


def _term(identifier: str, label: str) -> OntologyTerm:
    return OntologyTerm(identifier.split(":")[0], identifier, label)


class BiopaxClass(str, enum.Enum):
    PhysicalEntity = "PhysicalEntity"
    Protein = "Protein"
    Dna = "Dna"
    Rna = "Rna"
    Gene = "Gene"
    SmallMolecule = "SmallMolecule"
    Complex = "Complex"
    CellularLocationVocabulary = "CellularLocationVocabulary"
    Conversion = "Conversion"
    BiochemicalReaction = "BiochemicalReaction"
    TemplateReaction = "TemplateReaction"
    Catalysis = "Catalysis"
    Degradation = "Degradation"
    ComplexAssembly = "ComplexAssembly"
    Control = "Control"
    Transport = "Transport"


# Table of entity annotation types -> SBO.
ENTITY_SBO: dict[str, OntologyTerm] = {
    "Complex": _term("SBO:0000253", "non-covalent complex"),
    "Gene_or_gene_product": _term("SBO:0000245", "macromolecule"),
    "Dna": _term("SBO:0000251", "deoxyribonucleic acid"),
    "DnaRegion": _term("SBO:0000251", "deoxyribonucleic acid"),
    "Drug": _term("SBO:0000247", "simple chemical"),
    "Ion": _term("SBO:0000327", "non-macromolecular ion"),
    "Protein": _term("SBO:0000252", "polypeptide chain"),
    "Rna": _term("SBO:0000250", "ribonucleic acid"),
    "RnaRegion": _term("SBO:0000250", "ribonucleic acid"),
    "Gene": _term("SBO:0000354", "informational molecule segment"),
    "SmallMolecule": _term("SBO:0000247", "simple chemical"),
    "Simple_molecule": _term("SBO:0000247", "simple chemical"),
}

# Event annotation types -> SBO or GO.
EVENT_TERM: dict[str, OntologyTerm] = {
    "Conversion": _term("SBO:0000182", "conversion"),
    "Acetylation": _term("SBO:0000215", "acetylation"),
    "Deacetylation": _term("GO:0006476", "Protein Deacetylation"),
    "Methylation": _term("SBO:0000214", "Methylation"),
    "Demethylation": _term("GO:0006482", "Protein Demethylation"),
    "Phosphorylation": _term("SBO:0000216", "phosphorylation"),
    # published table labels this row "Methylation"; SBO:0000330 is dephosphorylation
    "Dephosphorylation": _term("SBO:0000330", "dephosphorylation"),
    "Ubiquitination": _term("SBO:0000224", "Ubiquitination"),
    "Deubiquitination": _term("GO:0016579", "Protein Deubiquitination"),
    "Degradation": _term("SBO:0000179", "degradation"),
    "Catabolism": _term("GO:0009056", "Catabolic Process"),
    "Catalysis": _term("SBO:0000172", "Catalysis"),
    "Protein_catabolism": _term("GO:0009056", "Catabolic Process"),
    "Association": _term("SBO:0000177", "non-covalent binding"),
    "Binding": _term("SBO:0000177", "non-covalent binding"),
    "Dissociation": _term("SBO:0000180", "dissociation"),
    "Regulation": _term("GO:0065007", "biological regulation"),
    "Positive_regulation": _term("GO:0048518", "positive regulation"),
    "Activation": _term("SBO:0000412", "biological activity"),
    "Negative_regulation": _term("GO:0048519", "negative regulation"),
    "Inactivation": _term("SBO:0000412", "biological activity"),
    "Gene_expression": _term("GO:0010467", "Genetic Production"),
    "Transcription": _term("SBO:0000183", "Transcription"),
    "Translation": _term("SBO:0000184", "Translation"),
    "Localization": _term("GO:0051179", "Localization"),
    "Transport": _term("SBO:0000185", "Transport Reaction"),
    "Pathway": _term("SBO:0000375", "Process"),
}

B = BiopaxClass

ENTITY_BIOPAX: dict[str, BiopaxClass] = {
    "Cellular_component": B.CellularLocationVocabulary,
    "Complex": B.Complex,
    "DNA": B.Dna,
    "Drug": B.PhysicalEntity,
    "Entity": B.PhysicalEntity,
    "Gene_or_gene_product": B.PhysicalEntity,
    "Gene_product": B.PhysicalEntity,
    "Gene": B.Gene,
    "Ion": B.PhysicalEntity,
    "Protein": B.Protein,
    "Receptor": B.PhysicalEntity,
    "RNA": B.Rna,
    "Simple_molecule": B.SmallMolecule,
    "Simple_chemical": B.SmallMolecule,
    "Tag": B.PhysicalEntity,
}

EVENT_BIOPAX: dict[str, BiopaxClass] = {
    "Conversion": B.Conversion,
    "Acetylation": B.BiochemicalReaction,
    "Deacetylation": B.BiochemicalReaction,
    "Methylation": B.BiochemicalReaction,
    "Demethylation": B.BiochemicalReaction,
    "Phosphorylation": B.BiochemicalReaction,
    "Dephosphorylation": B.BiochemicalReaction,
    "Ubiquitination": B.BiochemicalReaction,
    "Deubiquitination": B.BiochemicalReaction,
    "Gene_expression": B.TemplateReaction,
    "Transcription": B.TemplateReaction,
    "Translation": B.TemplateReaction,
    "Catalysis": B.Catalysis,
    "Degradation": B.Degradation,
    "Catabolism": B.Degradation,
    "Protein_catabolism": B.Degradation,
    "Association": B.ComplexAssembly,
    "Binding": B.ComplexAssembly,
    "Dissociation": B.ComplexAssembly,
    "Regulation": B.Control,
    "Positive_regulation": B.Catalysis,
    "Activation": B.Control,
    "Negative_regulation": B.Control,
    "Inactivation": B.Control,
    "Localization": B.Transport,
    "Transport": B.Transport,
}

# ModificationFeature vocabulary terms (PSI-MOD style names).
MODIFICATION_TERMS: dict[str, str] = {
    "Phosphorylation": "phosphorylated residue",
    "Dephosphorylation": "dephosphorylated residue",
    "Acetylation": "acetylated residue",
    "Deacetylation": "deacetylated residue",
    "Methylation": "methylated residue",
    "Demethylation": "demethylated residue",
    "Ubiquitination": "ubiquitinylated residue",
    "Deubiquitination": "deubiquitinylated residue",
    "Conversion": "modified residue",
}

# Prefixes for names of synthesized (completed) products, e.g. phoAkt1.
NAME_PREFIXES: dict[str, str] = {
    "Phosphorylation": "pho",
    "Ubiquitination": "ub",
    "Acetylation": "ace",
    "Methylation": "met",
}

# de-modification event -> the modification it undoes
DEMODIFICATIONS: dict[str, str] = {
    "Dephosphorylation": "Phosphorylation",
    "Deubiquitination": "Ubiquitination",
    "Deacetylation": "Acetylation",
    "Demethylation": "Methylation",
}

ENTITY_VOCABULARY = frozenset(normalize_key(k) for k in (*ENTITY_SBO, *ENTITY_BIOPAX))
EVENT_VOCABULARY = frozenset(normalize_key(k) for k in (*EVENT_TERM, *EVENT_BIOPAX))


def _index(table: dict) -> dict:
    return {normalize_key(k): v for k, v in table.items()}


@dataclass
class MappingTables:
    """The full set of lookup tables; ``MappingTables()`` gives the built-ins."""

    entity_sbo: dict[str, OntologyTerm] = field(default_factory=lambda: dict(ENTITY_SBO))
    event_term: dict[str, OntologyTerm] = field(default_factory=lambda: dict(EVENT_TERM))
    entity_biopax: dict[str, BiopaxClass] = field(default_factory=lambda: dict(ENTITY_BIOPAX))
    event_biopax: dict[str, BiopaxClass] = field(default_factory=lambda: dict(EVENT_BIOPAX))
    modification: dict[str, str] = field(default_factory=lambda: dict(MODIFICATION_TERMS))
    name_prefix: dict[str, str] = field(default_factory=lambda: dict(NAME_PREFIXES))

    def __post_init__(self):
        self._reindex()

    def _reindex(self) -> None:
        self._idx = {name: _index(getattr(self, name)) for name in _TABLE_NAMES}

    def lookup(self, table: str, key: str):
        return self._idx[table].get(normalize_key(key))

    def entity_to_sbo(self, entity_type: str) -> OntologyTerm | None:
        return self.lookup("entity_sbo", entity_type)

    def event_to_term(self, event_type: str) -> OntologyTerm | None:
        return self.lookup("event_term", event_type)

    def entity_to_biopax(self, entity_type: str) -> BiopaxClass | None:
        return self.lookup("entity_biopax", entity_type)

    def event_to_biopax(self, event_type: str) -> BiopaxClass | None:
        return self.lookup("event_biopax", event_type)

    def modification_term(self, event_type: str) -> str:
        return self.lookup("modification", event_type) or "modified residue"

    def name_prefix_for(self, event_type: str) -> str | None:
        return self.lookup("name_prefix", event_type)

    def is_entity_type(self, ann_type: str) -> bool:
        key = normalize_key(ann_type)
        return key in self._idx["entity_sbo"] or key in self._idx["entity_biopax"]

    def is_event_type(self, ann_type: str) -> bool:
        key = normalize_key(ann_type)
        return key in self._idx["event_term"] or key in self._idx["event_biopax"]

    # -- TSV round trip -------------------------------------------------

    def to_tsv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, delimiter="\t", lineterminator="\n")
        writer.writerow(["table", "key", "value", "label"])
        for name in _TABLE_NAMES:
            for key, value in getattr(self, name).items():
                if isinstance(value, OntologyTerm):
                    writer.writerow([name, key, value.identifier, value.label])
                elif isinstance(value, BiopaxClass):
                    writer.writerow([name, key, value.value, ""])
                else:
                    writer.writerow([name, key, value, ""])
        return out.getvalue()

    @classmethod
    def from_tsv(cls, text: str, base: "MappingTables | None" = None) -> "MappingTables":
        """Overlay the rows of a mapping TSV onto ``base`` (default: built-ins)."""
        tables = base.copy() if base is not None else cls()
        reader = csv.DictReader(io.StringIO(text), delimiter="\t")
        for lineno, row in enumerate(reader, start=2):
            name, key, value = row.get("table"), row.get("key"), row.get("value")
            if name not in _TABLE_NAMES or not key or value is None:
                raise ValueError(f"mapping TSV line {lineno}: bad row {row!r}")
            table = getattr(tables, name)
            if name in ("entity_sbo", "event_term"):
                table[key] = _term(value, row.get("label") or "")
            elif name in ("entity_biopax", "event_biopax"):
                table[key] = BiopaxClass(value)
            else:
                table[key] = value
        tables._reindex()
        return tables

    @classmethod
    def load(cls, path: str | Path) -> "MappingTables":
        return cls.from_tsv(Path(path).read_text(encoding="utf-8"))

    def copy(self) -> "MappingTables":
        return MappingTables(**{name: dict(getattr(self, name)) for name in _TABLE_NAMES})


_TABLE_NAMES = (
    "entity_sbo",
    "event_term",
    "entity_biopax",
    "event_biopax",
    "modification",
    "name_prefix",
)

DEFAULT_TABLES = MappingTables()


def entity_to_sbo(entity_type: str) -> OntologyTerm | None:
    return DEFAULT_TABLES.entity_to_sbo(entity_type)


def event_to_term(event_type: str) -> OntologyTerm | None:
    return DEFAULT_TABLES.event_to_term(event_type)


def entity_to_biopax(entity_type: str) -> BiopaxClass | None:
    return DEFAULT_TABLES.entity_to_biopax(entity_type)


def event_to_biopax(event_type: str) -> BiopaxClass | None:
    return DEFAULT_TABLES.event_to_biopax(event_type)
