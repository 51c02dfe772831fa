"""Standoff events to SBML (Level 2 Version 4).

Entities with an SBO mapping become species.  Most events become
irreversible reactions whose roles map to reactants, products and modifiers.
Localization events with an AtLoc role only move a species into a
compartment.  Regulations are handled in a second pass: when their Theme is
another event they add a modifier to the reaction that event chain ends in,
instead of producing a reaction of their own.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagnostics import Code, Diagnostic, warning
from .graph import (
    EventCategory,
    PathwayGraph,
    ThemeChainResolver,
    canonical_event_type,
    classify_event,
)
from .ids import compartment_id, natural_key, sbml_id
from .mappings import DEFAULT_TABLES, MappingTables, OntologyTerm, normalize_key
from .naming import product_name
from .options import ConversionOptions
from .standoff import EventAnnotation
from ._xml import XmlWriter

SBML_NS = "http://www.sbml.org/sbml/level2/version4"
XHTML_NS = "http://www.w3.org/1999/xhtml"
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
BQBIOL_NS = "http://biomodels.net/biology-qualifiers/"
METAID_PREFIX = "metaid_0000"


@dataclass
class Compartment:
    id: str
    name: str
    size: float = 1.0


@dataclass
class Species:
    id: str
    name: str
    compartment: str = "default"
    sbo_term: OntologyTerm | None = None
    notes: list[str] = field(default_factory=list)
    cv_terms: list[tuple[str, str]] = field(default_factory=list)
    synthesized: bool = False

    @property
    def metaid(self) -> str:
        return METAID_PREFIX + self.id


@dataclass
class Reaction:
    id: str
    name: str
    term: OntologyTerm | None = None
    reactants: list[str] = field(default_factory=list)
    products: list[str] = field(default_factory=list)
    modifiers: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    category: EventCategory = EventCategory.Unknown
    reversible: bool = False

    @property
    def metaid(self) -> str:
        return METAID_PREFIX + self.id

    @property
    def cv_terms(self) -> list[tuple[str, str]]:
        if self.term is not None and not self.term.is_sbo:
            return [("is", self.term.uri)]
        return []

    def add(self, role: str, species_id: str) -> None:
        refs = getattr(self, role)
        if species_id not in refs:
            refs.append(species_id)


@dataclass
class SbmlModel:
    model_id: str
    compartments: dict[str, Compartment] = field(default_factory=dict)
    species: dict[str, Species] = field(default_factory=dict)
    reactions: dict[str, Reaction] = field(default_factory=dict)
    # entities that ended up as compartments rather than species
    location_entities: set[str] = field(default_factory=set)

    def taken_ids(self) -> set[str]:
        return set(self.compartments) | set(self.species) | set(self.reactions)

    def find_or_create_compartment(self, text: str) -> Compartment:
        cid = compartment_id(text)
        if cid not in self.compartments:
            self.compartments[cid] = Compartment(cid, text)
        return self.compartments[cid]

    def synthesize_species(self, base: str, name: str, like: Species | None = None, sbo: OntologyTerm | None = None) -> Species:
        """Add a completion-created species with id ``<base><k>`` (k = 1, 2, ...)."""
        taken = self.taken_ids()
        k = 1
        while f"{base}{k}" in taken:
            k += 1
        sp = Species(
            f"{base}{k}",
            name,
            compartment=like.compartment if like else "default",
            sbo_term=sbo if sbo is not None else (like.sbo_term if like else None),
            synthesized=True,
        )
        self.species[sp.id] = sp
        return sp

    def referenced_species(self) -> set[str]:
        refs: set[str] = set()
        for rxn in self.reactions.values():
            refs.update(rxn.reactants, rxn.products, rxn.modifiers)
        return refs


# ---------------------------------------------------------------------------
# conversion

_RNA = {normalize_key(t) for t in ("Rna", "RnaRegion", "RNA")}
_DNA = {normalize_key(t) for t in ("Dna", "DnaRegion", "DNA", "Gene")}
_PROTEIN = {normalize_key("Protein")}

# expression event -> (types mapped to product, types mapped to modifier)
_EXPRESSION_ROLES = {
    "Transcription": (_RNA | _PROTEIN, _DNA),
    "Translation": (_PROTEIN, _RNA | _DNA),
    "Gene_expression": (_PROTEIN | _RNA, _DNA),
}

_EXPRESSION_PRODUCT_SBO = {
    "Transcription": "Rna",
    "Translation": "Protein",
    "Gene_expression": "Protein",
}


def expression_role(event_type: str, theme_type: str) -> tuple[str, bool]:
    """Return ("products"|"modifiers", ambiguous) for a gene-expression Theme."""
    products, modifiers = _EXPRESSION_ROLES.get(canonical_event_type(event_type), _EXPRESSION_ROLES["Gene_expression"])
    key = normalize_key(theme_type)
    if key in products:
        return "products", False
    if key in modifiers:
        return "modifiers", False
    return "products", True


class _Builder:
    def __init__(self, graph: PathwayGraph, tables: MappingTables):
        self.graph = graph
        self.tables = tables
        self.model = SbmlModel(sbml_id(graph.doc_id))
        self.diagnostics: list[Diagnostic] = []
        # (reaction id, cause event id) waiting for the cause to be realized
        self.pending_causes: list[tuple[str, str]] = []

    # -- diagnostics ----------------------------------------------------

    def _warn(self, code: Code, ref: str, message: str, dropped: bool = False) -> None:
        source, line = self.graph.location(ref)
        self.diagnostics.append(warning(code, message, line, source=source, ref=ref, dropped=dropped))

    def _drop(self, code: Code, ref: str, message: str) -> None:
        self._warn(code, ref, message, dropped=True)

    # -- steps ------------------------------------------------------------

    def run(self) -> SbmlModel:
        self.model.compartments["default"] = Compartment("default", "default")
        for tid, tb in self.graph.entities.items():
            term = self.tables.entity_to_sbo(tb.ann_type)
            if term is not None:
                self.model.species[tid] = Species(tid, tb.text, "default", term)

        regulations = []
        for eid, ev in self.graph.events.items():
            category = classify_event(ev.event_type)
            if category is EventCategory.Regulation:
                regulations.append(eid)
                continue
            term = self.tables.event_to_term(ev.event_type)
            if term is None:
                self._drop(Code.UNMAPPED_TYPE, eid, f"{eid}: no SBO/GO term for event type {ev.event_type!r}")
                continue
            if category is EventCategory.Localization:
                self.localization(ev, term)
            elif category is EventCategory.GeneExpression:
                self.gene_expression(ev, term)
            else:
                if category is EventCategory.Pathway:
                    self._warn(Code.PATHWAY_EVENT, eid, f"{eid}: Pathway event converted with generic role rules")
                self.generic(ev, term, category)
        self.regulation_pass(regulations)
        return self.model

    def _new_reaction(self, ev: EventAnnotation, term: OntologyTerm | None, category: EventCategory) -> Reaction:
        return Reaction(ev.id, ev.event_type, term, category=category)

    def _species(self, ev: EventAnnotation, target: str, role: str) -> str | None:
        if target in self.model.species:
            return target
        if target in self.graph.events:
            what = "an event"
        elif target in self.graph.entities:
            what = f"an unmapped {self.graph.entities[target].ann_type!r} entity"
        else:
            what = "undefined"
        self._warn(Code.UNREALIZED_ROLE, ev.id, f"{ev.id}: {role} {target} is {what}; not added to the model")
        return None

    def _site_notes(self, ev: EventAnnotation, rxn: Reaction) -> None:
        for target in ev.targets("Site"):
            tb = self.graph.entities.get(target) or self.graph.event_triggers.get(target)
            if tb is not None:
                note = f"Site: {tb.text} ({target})"
                if note not in rxn.notes:
                    rxn.notes.append(note)

    def _causes(self, ev: EventAnnotation, rxn: Reaction) -> None:
        """Attach entity causes now; queue event causes for the regulation pass."""
        for target in ev.targets("Cause"):
            if target in self.graph.events:
                self.pending_causes.append((rxn.id, target))
            else:
                sid = self._species(ev, target, "Cause")
                if sid:
                    rxn.add("modifiers", sid)

    def generic(self, ev: EventAnnotation, term: OntologyTerm, category: EventCategory) -> None:
        rxn = self._new_reaction(ev, term, category)
        for binding in ev.roles:
            role = {
                "Theme": "reactants",
                "Complex": "reactants",
                "Product": "products",
                "Participant": "products",
            }.get(binding.role)
            if role is None:
                if binding.role not in ("Cause", "Site"):
                    self._warn(Code.UNREALIZED_ROLE, ev.id, f"{ev.id}: role {binding.label} ignored for {ev.event_type}")
                continue
            sid = self._species(ev, binding.target, binding.label)
            if sid:
                rxn.add(role, sid)
        self.model.reactions[rxn.id] = rxn
        self._causes(ev, rxn)
        self._site_notes(ev, rxn)

    def _location(self, ev: EventAnnotation, role: str) -> Compartment | None:
        targets = ev.targets(role)
        if not targets:
            return None
        target = targets[0]
        tb = self.graph.entities.get(target)
        if tb is None:
            self._warn(Code.DANGLING_LOCATION, ev.id, f"{ev.id}: {role} target {target} is not an entity")
            return None
        if target not in self.model.species:
            self.model.location_entities.add(target)
        return self.model.find_or_create_compartment(tb.text)

    def localization(self, ev: EventAnnotation, term: OntologyTerm) -> None:
        themes = ev.targets("Theme")
        if ev.has_role("AtLoc"):
            comp = self._location(ev, "AtLoc")
            if comp is None:
                self._drop(Code.UNRESOLVED_THEME, ev.id, f"{ev.id}: AtLoc does not name a usable location")
                return
            for target in themes:
                sid = self._species(ev, target, "Theme")
                if sid:
                    self.model.species[sid].compartment = comp.id
            if ev.has_role("FromLoc") or ev.has_role("ToLoc"):
                self._warn(Code.UNREALIZED_ROLE, ev.id, f"{ev.id}: FromLoc/ToLoc ignored next to AtLoc")
            return
        if not (ev.has_role("FromLoc") or ev.has_role("ToLoc")):
            self._drop(Code.THEME_ONLY_LOCALIZATION, ev.id, f"{ev.id}: {ev.event_type} without a location role")
            return
        source = self._location(ev, "FromLoc")
        dest = self._location(ev, "ToLoc")
        rxn = self._new_reaction(ev, term, EventCategory.Localization)
        for target in themes:
            sid = self._species(ev, target, "Theme")
            if not sid:
                continue
            species = self.model.species[sid]
            if source is not None:
                species.compartment = source.id
            rxn.add("reactants", sid)
            if dest is not None:
                rxn.add("products", self._moved_species(species, dest).id)
        self.model.reactions[rxn.id] = rxn
        self._causes(ev, rxn)
        self._site_notes(ev, rxn)

    def _moved_species(self, species: Species, dest: Compartment) -> Species:
        for other in self.model.species.values():
            if other.id != species.id and other.name == species.name and other.compartment == dest.id:
                return other
        taken = self.model.taken_ids()
        base = f"{species.id}_in_{dest.id}"
        new_id = base
        k = 2
        while new_id in taken:
            new_id = f"{base}{k}"
            k += 1
        moved = Species(new_id, species.name, dest.id, species.sbo_term, synthesized=True)
        self.model.species[new_id] = moved
        return moved

    def gene_expression(self, ev: EventAnnotation, term: OntologyTerm) -> None:
        rxn = self._new_reaction(ev, term, EventCategory.GeneExpression)
        for target in ev.targets("Theme"):
            sid = self._species(ev, target, "Theme")
            if not sid:
                continue
            theme_type = self.graph.entities[target].ann_type
            role, ambiguous = expression_role(ev.event_type, theme_type)
            if ambiguous:
                self._warn(
                    Code.GRANULARITY,
                    ev.id,
                    f"{ev.id}: {theme_type!r} Theme is too coarse to tell product from template; used as product",
                )
            rxn.add(role, sid)
        for target in ev.targets("Product"):
            sid = self._species(ev, target, "Product")
            if sid:
                rxn.add("products", sid)
        self.model.reactions[rxn.id] = rxn
        self._causes(ev, rxn)
        self._site_notes(ev, rxn)

    # -- regulation -------------------------------------------------------

    def cause_reaction(self, cause_event: str) -> str | None:
        """Reaction whose outcome stands for ``cause_event`` (no model change)."""
        realized = self.model.reactions
        if cause_event in realized:
            return cause_event
        return ThemeChainResolver(self.graph, realized).resolve(cause_event)

    def cause_product(self, cause_event: str) -> str | None:
        """Product species of the cause's reaction, synthesized if it has none."""
        target = self.cause_reaction(cause_event)
        if target is None:
            return None
        rxn = self.model.reactions[target]
        if rxn.products:
            return rxn.products[0]
        return synthesize_product(self.model, rxn, self.tables).id

    def _resolve_causes(self, ev: EventAnnotation, final: bool) -> list[str] | None:
        """Modifier species for every Cause, or None if some event cause must wait."""
        causes = ev.targets("Cause")
        unresolved = [t for t in causes if t in self.graph.events and self.cause_reaction(t) is None]
        if unresolved and not final:
            return None
        modifiers = []
        for target in causes:
            if target in unresolved:
                self._warn(Code.UNRESOLVED_CAUSE, ev.id, f"{ev.id}: Cause {target} has no realized outcome")
            elif target in self.graph.events:
                modifiers.append(self.cause_product(target))
            else:
                sid = self._species(ev, target, "Cause")
                if sid:
                    modifiers.append(sid)
        return modifiers

    def try_regulation(self, eid: str, final: bool = False) -> bool:
        """Apply one regulation event; False means "retry once more is realized"."""
        ev = self.graph.events[eid]
        themes = ev.targets("Theme")
        entity_themes = [t for t in themes if t not in self.graph.events]
        event_themes = [t for t in themes if t in self.graph.events]
        term = self.tables.event_to_term(ev.event_type)

        if not themes and not ev.has_role("Cause"):
            self._drop(Code.UNRESOLVED_THEME, eid, f"{eid}: regulation without Theme or Cause")
            return True

        if entity_themes or not themes:
            modifiers = self._resolve_causes(ev, final)
            if modifiers is None:
                return False
            rxn = self._new_reaction(ev, term, EventCategory.Regulation)
            for target in entity_themes:
                sid = self._species(ev, target, "Theme")
                if sid:
                    rxn.add("reactants", sid)
            if event_themes:
                self._warn(Code.UNREALIZED_ROLE, eid, f"{eid}: event Themes {event_themes} ignored next to entity Themes")
            for sid in modifiers:
                rxn.add("modifiers", sid)
            self._site_notes(ev, rxn)
            self.model.reactions[rxn.id] = rxn
            return True

        if not ev.has_role("Cause"):
            self._drop(Code.UNRESOLVED_THEME, eid, f"{eid}: event Theme without a Cause cannot be linked")
            return True
        resolver = ThemeChainResolver(self.graph, self.model.reactions)
        target = resolver.resolve(eid)
        if target is None:
            if final:
                cyclic = " (cyclic Theme chain)" if eid in resolver.cycles_hit else ""
                if cyclic:
                    self._warn(Code.CYCLIC_THEME, eid, f"{eid}: Theme chain is cyclic")
                self._drop(Code.UNRESOLVED_THEME, eid, f"{eid}: no reaction found along the Theme chain{cyclic}")
                return True
            return False
        modifiers = self._resolve_causes(ev, final)
        if modifiers is None:
            return False
        if not modifiers:
            self._drop(Code.UNRESOLVED_CAUSE, eid, f"{eid}: no Cause could be realized")
            return True
        rxn = self.model.reactions[target]
        for sid in modifiers:
            rxn.add("modifiers", sid)
        return True

    def regulation_pass(self, regulations: list[str]) -> None:
        remaining = list(regulations)
        while remaining or self.pending_causes:
            progress = False
            for rid, cause in list(self.pending_causes):
                sid = self.cause_product(cause)
                if sid is not None:
                    self.model.reactions[rid].add("modifiers", sid)
                    self.pending_causes.remove((rid, cause))
                    progress = True
            for eid in list(remaining):
                if self.try_regulation(eid):
                    remaining.remove(eid)
                    progress = True
            if progress:
                continue
            if remaining:
                self.try_regulation(remaining.pop(0), final=True)
                continue
            for rid, cause in self.pending_causes:
                self._warn(Code.UNRESOLVED_CAUSE, rid, f"{rid}: Cause {cause} has no realized outcome")
            self.pending_causes.clear()


def _source_species(model: SbmlModel, rxn: Reaction) -> list[Species]:
    ids = rxn.reactants or (rxn.modifiers if rxn.category is EventCategory.GeneExpression else [])
    return [model.species[s] for s in ids if s in model.species]


def synthesize_product(model: SbmlModel, rxn: Reaction, tables: MappingTables = DEFAULT_TABLES) -> Species:
    """Create and attach a product species for ``rxn`` following the naming rules."""
    sources = _source_species(model, rxn)
    name = product_name(rxn.name, [s.name for s in sources], tables)
    like = sources[0] if sources else None
    sbo = None
    canonical = canonical_event_type(rxn.name)
    if rxn.category is EventCategory.GeneExpression:
        sbo = tables.entity_to_sbo(_EXPRESSION_PRODUCT_SBO.get(canonical, "Protein"))
    elif canonical in ("Binding", "Association"):
        sbo = tables.entity_to_sbo("Complex")
    product = model.synthesize_species(f"{rxn.id}_prod", name, like, sbo)
    rxn.add("products", product.id)
    return product


def convert_to_sbml(
    graph: PathwayGraph,
    options: ConversionOptions | None = None,
    tables: MappingTables = DEFAULT_TABLES,
) -> tuple[SbmlModel, list[Diagnostic]]:
    builder = _Builder(graph, tables)
    model = builder.run()
    diagnostics = builder.diagnostics
    if options is not None:
        from .postprocess import apply_passes

        apply_passes(model, options, diagnostics, tables)
    return model, diagnostics


# ---------------------------------------------------------------------------
# serialization


def _write_notes(w: XmlWriter, notes: list[str]) -> None:
    if not notes:
        return
    w.start("notes")
    w.start("body", [("xmlns", XHTML_NS)])
    for note in notes:
        w.text("p", note)
    w.end("body")
    w.end("notes")


def _write_annotation(w: XmlWriter, metaid: str, cv_terms: list[tuple[str, str]]) -> None:
    if not cv_terms:
        return
    w.start("annotation")
    w.start("rdf:RDF", [("xmlns:rdf", RDF_NS), ("xmlns:bqbiol", BQBIOL_NS)])
    w.start("rdf:Description", [("rdf:about", "#" + metaid)])
    qualifiers: dict[str, list[str]] = {}
    for qualifier, uri in cv_terms:
        qualifiers.setdefault(qualifier, []).append(uri)
    for qualifier, uris in qualifiers.items():
        w.start(f"bqbiol:{qualifier}")
        w.start("rdf:Bag")
        for uri in uris:
            w.empty("rdf:li", [("rdf:resource", uri)])
        w.end("rdf:Bag")
        w.end(f"bqbiol:{qualifier}")
    w.end("rdf:Description")
    w.end("rdf:RDF")
    w.end("annotation")


def _check(model: SbmlModel) -> None:
    if "default" not in model.compartments:
        raise ValueError("model has no default compartment")
    for sp in model.species.values():
        if sp.compartment not in model.compartments:
            raise ValueError(f"species {sp.id} names unknown compartment {sp.compartment}")
    for rxn in model.reactions.values():
        if rxn.reversible:
            raise ValueError(f"reaction {rxn.id} is reversible")
        for sid in (*rxn.reactants, *rxn.products, *rxn.modifiers):
            if sid not in model.species:
                raise ValueError(f"reaction {rxn.id} references unknown species {sid}")


def _fmt_size(size: float) -> str:
    return str(int(size)) if float(size).is_integer() else repr(size)


def serialize_sbml(model: SbmlModel) -> str:
    _check(model)
    w = XmlWriter()
    w.start("sbml", [("xmlns", SBML_NS), ("level", "2"), ("version", "4")])
    w.start("model", [("id", model.model_id), ("name", model.model_id)])

    w.start("listOfCompartments")
    for cid in sorted(model.compartments, key=natural_key):
        comp = model.compartments[cid]
        w.empty("compartment", [("id", comp.id), ("name", comp.name), ("size", _fmt_size(comp.size))])
    w.end("listOfCompartments")

    if model.species:
        w.start("listOfSpecies")
        for sid in sorted(model.species, key=natural_key):
            sp = model.species[sid]
            attrs = [
                ("sboTerm", sp.sbo_term.identifier if sp.sbo_term is not None and sp.sbo_term.is_sbo else None),
                ("id", sp.id),
                ("name", sp.name),
                ("metaid", sp.metaid),
                ("compartment", sp.compartment),
            ]
            if not sp.notes and not sp.cv_terms:
                w.empty("species", attrs)
                continue
            w.start("species", attrs)
            _write_notes(w, sp.notes)
            _write_annotation(w, sp.metaid, sp.cv_terms)
            w.end("species")
        w.end("listOfSpecies")

    if model.reactions:
        w.start("listOfReactions")
        for rid in sorted(model.reactions, key=natural_key):
            rxn = model.reactions[rid]
            w.start(
                "reaction",
                [
                    ("metaid", rxn.metaid),
                    ("sboTerm", rxn.term.identifier if rxn.term is not None and rxn.term.is_sbo else None),
                    ("id", rxn.id),
                    ("name", rxn.name),
                    ("reversible", "false"),
                ],
            )
            _write_notes(w, rxn.notes)
            _write_annotation(w, rxn.metaid, rxn.cv_terms)
            for tag, refs, ref_tag in (
                ("listOfReactants", rxn.reactants, "speciesReference"),
                ("listOfProducts", rxn.products, "speciesReference"),
                ("listOfModifiers", rxn.modifiers, "modifierSpeciesReference"),
            ):
                if refs:
                    w.start(tag)
                    for sid in refs:
                        w.empty(ref_tag, [("species", sid)])
                    w.end(tag)
            w.end("reaction")
        w.end("listOfReactions")

    w.end("model")
    w.end("sbml")
    return w.getvalue()
