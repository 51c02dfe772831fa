"""Standoff events to BioPAX Level 3, written as RDF/XML.

Elements are emitted directly (no Paxtools).  Ids of source-derived elements
are the annotation ids; synthesized elements get traceable ids:

* ``<entity>_mod``            modified clone of a Theme (ModificationFeature added)
* ``<entity>_in_<location>``  Theme clone at a transport destination
* ``<entity>_active`` / ``<entity>_inactive``  activity forms used by regulations
* ``<event>_ctrl``            Control spawned by a Cause
* ``<event>_complex``         Complex formed by a Binding without Product
* ``<event>_prod<k>`` / ``<event>_reac<k>``  completion-created participants
* ``loc_<name>``, ``smv_<term>``  location and modification vocabularies
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from urllib.parse import quote

from .diagnostics import Code, Diagnostic, warning
from .graph import (
    EventCategory,
    PathwayGraph,
    ThemeChainResolver,
    canonical_event_type,
    classify_event,
)
from .ids import compartment_id, natural_key, unique_id
from .mappings import DEFAULT_TABLES, BiopaxClass, MappingTables
from .naming import product_name, reactant_name
from .options import ConversionOptions
from .sbml import expression_role
from .standoff import EventAnnotation
from ._xml import XmlWriter

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
BP_NS = "http://www.biopax.org/release/biopax-level3.owl#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"
XSD_INT = "http://www.w3.org/2001/XMLSchema#int"
DEFAULT_XML_BASE = "http://example.org/standoff/{doc_id}/"

ENTITY_CLASSES = frozenset({"PhysicalEntity", "Protein", "Dna", "Rna", "Gene", "SmallMolecule", "Complex"})
CONVERSION_CLASSES = frozenset({"Conversion", "BiochemicalReaction", "ComplexAssembly", "Degradation", "Transport"})
CONTROL_CLASSES = frozenset({"Control", "Catalysis"})
INTERACTION_CLASSES = CONVERSION_CLASSES | CONTROL_CLASSES | {"TemplateReaction"}
UTILITY_CLASSES = frozenset(
    {
        "CellularLocationVocabulary",
        "SequenceModificationVocabulary",
        "ModificationFeature",
        "SequenceSite",
        "UnificationXref",
        "RelationshipXref",
    }
)
PROPERTIES = frozenset(
    {
        "name",
        "left",
        "right",
        "product",
        "template",
        "controller",
        "controlled",
        "controlType",
        "conversionDirection",
        "cellularLocation",
        "feature",
        "modificationType",
        "sequenceSite",
        "xref",
        "comment",
        # vocabulary, xref and site payloads
        "term",
        "db",
        "id",
        "sequencePosition",
    }
)
# properties through which an interaction uses a physical entity
PARTICIPANT_PROPERTIES = ("left", "right", "product", "template", "controller")

_ACTIVATING = {"Positive_regulation", "Activation", "Catalysis"}
_INHIBITING = {"Negative_regulation", "Inactivation"}


@dataclass(frozen=True)
class Ref:
    id: str


@dataclass(frozen=True)
class Literal:
    value: str
    datatype: str = XSD_STRING


@dataclass
class BiopaxElement:
    rdf_id: str
    class_name: str
    properties: list[tuple[str, Ref | Literal]] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)
    # source event type for interactions; not serialized
    event_type: str | None = None

    def add(self, name: str, value: Ref | Literal) -> None:
        if name not in PROPERTIES:
            raise ValueError(f"property {name!r} is outside the supported BioPAX vocabulary")
        if (name, value) not in self.properties:
            self.properties.append((name, value))

    def set(self, name: str, value: Ref | Literal) -> None:
        self.properties = [(n, v) for n, v in self.properties if n != name]
        self.add(name, value)

    def remove_refs(self, ids) -> None:
        self.properties = [(n, v) for n, v in self.properties if not (isinstance(v, Ref) and v.id in ids)]

    def values(self, name: str) -> list[Ref | Literal]:
        return [v for n, v in self.properties if n == name]

    def refs(self, name: str | None = None) -> list[str]:
        return [v.id for n, v in self.properties if isinstance(v, Ref) and (name is None or n == name)]

    def literal(self, name: str) -> str | None:
        for v in self.values(name):
            if isinstance(v, Literal):
                return v.value
        return None

    @property
    def name(self) -> str | None:
        return self.literal("name")

    def add_comment(self, text: str) -> None:
        if text not in self.comments:
            self.comments.append(text)


@dataclass
class BiopaxModel:
    elements: dict[str, BiopaxElement] = field(default_factory=dict)
    xml_base: str = "http://example.org/standoff/"

    def add(self, element: BiopaxElement) -> BiopaxElement:
        if element.rdf_id in self.elements:
            raise ValueError(f"duplicate rdf id {element.rdf_id}")
        self.elements[element.rdf_id] = element
        return element

    def new_id(self, base: str) -> str:
        return unique_id(base, self.elements)

    def of_class(self, classes) -> list[BiopaxElement]:
        return [el for el in self.elements.values() if el.class_name in classes]

    def clone(self, origin: BiopaxElement, new_id: str) -> BiopaxElement:
        """Copy of ``origin``'s properties (not its comments) under a new id."""
        twin = BiopaxElement(new_id, origin.class_name, list(origin.properties))
        return self.add(twin)

    def modification_vocabulary(self, term: str) -> str:
        vid = "smv_" + compartment_id(term)
        if vid not in self.elements:
            vocab = self.add(BiopaxElement(vid, "SequenceModificationVocabulary"))
            vocab.add("term", Literal(term))
        return vid

    def add_feature(self, entity: BiopaxElement, term: str, site_text: str | None = None) -> BiopaxElement:
        feature = self.add(BiopaxElement(self.new_id(f"{entity.rdf_id}_feature"), "ModificationFeature"))
        feature.add("modificationType", Ref(self.modification_vocabulary(term)))
        if site_text:
            site = self.add(BiopaxElement(self.new_id(f"{entity.rdf_id}_site"), "SequenceSite"))
            position = re.search(r"\d+", site_text)
            if position:
                site.add("sequencePosition", Literal(position.group(), XSD_INT))
            site.add_comment(f"Site: {site_text}")
            feature.add("sequenceSite", Ref(site.rdf_id))
        entity.add("feature", Ref(feature.rdf_id))
        return feature


# ---------------------------------------------------------------------------
# conversion


class _Builder:
    def __init__(self, graph: PathwayGraph, tables: MappingTables, xml_base: str):
        self.graph = graph
        self.tables = tables
        self.model = BiopaxModel(xml_base=xml_base)
        self.diagnostics: list[Diagnostic] = []
        self.realized: set[str] = set()
        self.locations: dict[str, str] = {}
        self.pending_causes: list[tuple[str, str]] = []

    def _warn(self, code: Code, ref: str, message: str, dropped: bool = False) -> None:
        source, line = self.graph.location(ref)
        self.diagnostics.append(warning(code, message, line, source=source, ref=ref, dropped=dropped))

    def _drop(self, code: Code, ref: str, message: str) -> None:
        self._warn(code, ref, message, dropped=True)

    def run(self) -> BiopaxModel:
        for tid, tb in self.graph.entities.items():
            cls = self.tables.entity_to_biopax(tb.ann_type)
            if cls is None:
                continue
            el = self.model.add(BiopaxElement(tid, cls.value))
            if cls is BiopaxClass.CellularLocationVocabulary:
                el.add("term", Literal(tb.text))
                self.locations.setdefault(compartment_id(tb.text), tid)
            else:
                el.add("name", Literal(tb.text))

        regulations = []
        for eid, ev in self.graph.events.items():
            category = classify_event(ev.event_type)
            if category is EventCategory.Regulation:
                regulations.append(eid)
                continue
            cls = self.tables.event_to_biopax(ev.event_type)
            if cls is None:
                self._drop(Code.UNMAPPED_TYPE, eid, f"{eid}: no BioPAX class for event type {ev.event_type!r}")
                continue
            if category is EventCategory.Localization:
                self.localization(ev, cls)
            elif category is EventCategory.GeneExpression:
                self.template_reaction(ev, cls)
            elif category is EventCategory.BindingDissociation:
                self.complex_assembly(ev, cls)
            elif category is EventCategory.Degradation:
                self.degradation(ev, cls)
            else:
                self.modification(ev, cls)
        self.regulation_pass(regulations)
        return self.model

    # -- helpers ------------------------------------------------------------

    def _entity(self, ev: EventAnnotation, target: str, role: str) -> BiopaxElement | None:
        el = self.model.elements.get(target)
        if el is not None and el.class_name in ENTITY_CLASSES:
            return el
        if target in self.graph.events:
            what = "an event"
        elif target in self.graph.entities:
            what = f"a {self.graph.entities[target].ann_type!r} entity without a physical-entity class"
        else:
            what = "undefined"
        self._warn(Code.UNREALIZED_ROLE, ev.id, f"{ev.id}: {role} {target} is {what}; not added to the model")
        return None

    def _interaction(self, ev: EventAnnotation, cls: str) -> BiopaxElement:
        el = self.model.add(BiopaxElement(ev.id, cls, event_type=ev.event_type))
        if cls in CONVERSION_CLASSES:
            el.add("conversionDirection", Literal("LEFT_TO_RIGHT"))
        self.realized.add(ev.id)
        return el

    def _site_text(self, ev: EventAnnotation) -> str | None:
        texts = []
        for target in ev.targets("Site"):
            tb = self.graph.entities.get(target) or self.graph.event_triggers.get(target)
            if tb is not None:
                texts.append(tb.text)
        return ", ".join(texts) if texts else None

    def _location(self, ev: EventAnnotation, role: str) -> str | None:
        targets = ev.targets(role)
        if not targets:
            return None
        tb = self.graph.entities.get(targets[0])
        if tb is None:
            self._warn(Code.DANGLING_LOCATION, ev.id, f"{ev.id}: {role} target {targets[0]} is not an entity")
            return None
        key = compartment_id(tb.text)
        if key not in self.locations:
            vocab = self.model.add(BiopaxElement(self.model.new_id("loc_" + key), "CellularLocationVocabulary"))
            vocab.add("term", Literal(tb.text))
            self.locations[key] = vocab.rdf_id
        return self.locations[key]

    def _causes(self, ev: EventAnnotation, interaction: BiopaxElement) -> None:
        for target in ev.targets("Cause"):
            if target in self.graph.events:
                self.pending_causes.append((interaction.rdf_id, target))
                continue
            el = self._entity(ev, target, "Cause")
            if el is not None:
                self._control(ev.id, "Control", interaction.rdf_id, el.rdf_id, None)

    def _control(self, eid: str, cls: str, controlled: str, controller: str | None, control_type: str | None, rdf_id: str | None = None) -> BiopaxElement:
        ctrl = self.model.add(BiopaxElement(rdf_id or self.model.new_id(f"{eid}_ctrl"), cls, event_type=None))
        if controller is not None:
            ctrl.add("controller", Ref(controller))
        ctrl.add("controlled", Ref(controlled))
        if control_type:
            ctrl.add("controlType", Literal(control_type))
        return ctrl

    # -- event categories -----------------------------------------------------

    def modification(self, ev: EventAnnotation, cls: BiopaxClass) -> None:
        rxn = self._interaction(ev, cls.value)
        products = [el for el in (self._entity(ev, t, "Product") for t in ev.targets("Product")) if el]
        site = self._site_text(ev)
        term = self.tables.modification_term(ev.event_type)
        for target in ev.targets("Theme"):
            theme = self._entity(ev, target, "Theme")
            if theme is None:
                continue
            rxn.add("left", Ref(theme.rdf_id))
            if not products:
                clone = self.model.clone(theme, self.model.new_id(f"{theme.rdf_id}_mod"))
                self.model.add_feature(clone, term, site)
                rxn.add("right", Ref(clone.rdf_id))
        for el in products:
            rxn.add("right", Ref(el.rdf_id))
        self._causes(ev, rxn)

    def degradation(self, ev: EventAnnotation, cls: BiopaxClass) -> None:
        rxn = self._interaction(ev, cls.value)
        for target in ev.targets("Theme"):
            theme = self._entity(ev, target, "Theme")
            if theme is not None:
                rxn.add("left", Ref(theme.rdf_id))
        self._causes(ev, rxn)

    def complex_assembly(self, ev: EventAnnotation, cls: BiopaxClass) -> None:
        rxn = self._interaction(ev, cls.value)
        dissociation = canonical_event_type(ev.event_type) == "Dissociation"
        left_roles = ("Theme", "Complex") if dissociation else ("Theme",)
        right_roles = ("Participant", "Product") if dissociation else ("Product",)
        for binding in ev.roles:
            if binding.role in left_roles or binding.role in right_roles:
                el = self._entity(ev, binding.target, binding.label)
                if el is not None:
                    rxn.add("left" if binding.role in left_roles else "right", Ref(el.rdf_id))
        if not dissociation and not rxn.refs("right") and rxn.refs("left"):
            names = [self.model.elements[i].name or i for i in rxn.refs("left")]
            cplx = self.model.add(BiopaxElement(self.model.new_id(f"{ev.id}_complex"), "Complex"))
            cplx.add("name", Literal(":".join(names)))
            rxn.add("right", Ref(cplx.rdf_id))
        self._causes(ev, rxn)

    def template_reaction(self, ev: EventAnnotation, cls: BiopaxClass) -> None:
        rxn = self._interaction(ev, cls.value)
        for target in ev.targets("Theme"):
            theme = self._entity(ev, target, "Theme")
            if theme is None:
                continue
            theme_type = self.graph.entities[target].ann_type
            role, ambiguous = expression_role(ev.event_type, theme_type)
            if ambiguous:
                self._warn(
                    Code.GRANULARITY,
                    ev.id,
                    f"{ev.id}: {theme_type!r} Theme is too coarse to tell product from template; used as product",
                )
            rxn.add("product" if role == "products" else "template", Ref(theme.rdf_id))
        for target in ev.targets("Product"):
            el = self._entity(ev, target, "Product")
            if el is not None:
                rxn.add("product", Ref(el.rdf_id))
        self._causes(ev, rxn)

    def localization(self, ev: EventAnnotation, cls: BiopaxClass) -> None:
        themes = ev.targets("Theme")
        if ev.has_role("AtLoc"):
            loc = self._location(ev, "AtLoc")
            if loc is None:
                self._drop(Code.UNRESOLVED_THEME, ev.id, f"{ev.id}: AtLoc does not name a usable location")
                return
            for target in themes:
                theme = self._entity(ev, target, "Theme")
                if theme is not None:
                    theme.set("cellularLocation", Ref(loc))
                    theme.add_comment(ev.id)
            return
        if not (ev.has_role("FromLoc") or ev.has_role("ToLoc")):
            self._drop(Code.THEME_ONLY_LOCALIZATION, ev.id, f"{ev.id}: {ev.event_type} without a location role")
            return
        source = self._location(ev, "FromLoc")
        dest = self._location(ev, "ToLoc")
        rxn = self._interaction(ev, cls.value)
        for target in themes:
            theme = self._entity(ev, target, "Theme")
            if theme is None:
                continue
            if source is not None:
                theme.set("cellularLocation", Ref(source))
            rxn.add("left", Ref(theme.rdf_id))
            if dest is not None:
                rxn.add("right", Ref(self._moved(theme, dest).rdf_id))
        self._causes(ev, rxn)

    def _moved(self, theme: BiopaxElement, dest: str) -> BiopaxElement:
        for el in self.model.of_class(ENTITY_CLASSES):
            if el is not theme and el.class_name == theme.class_name and el.name == theme.name and el.refs("cellularLocation") == [dest]:
                return el
        term = self.model.elements[dest].literal("term") or dest
        clone = self.model.clone(theme, self.model.new_id(f"{theme.rdf_id}_in_{compartment_id(term)}"))
        clone.set("cellularLocation", Ref(dest))
        return clone

    # -- regulation -------------------------------------------------------

    def _resolver(self) -> ThemeChainResolver:
        return ThemeChainResolver(self.graph, self.realized)

    def cause_interaction(self, cause_event: str) -> str | None:
        if cause_event in self.realized:
            return cause_event
        return self._resolver().resolve(cause_event)

    def cause_controller(self, cause_event: str) -> str | None:
        """The right-side entity (or product) of the cause's interaction."""
        target = self.cause_interaction(cause_event)
        if target is None:
            return None
        el = self.model.elements[target]
        side = "product" if el.class_name == "TemplateReaction" else "right"
        existing = el.refs(side)
        if existing:
            return existing[0]
        return synthesize_right(self.model, el, self.tables).rdf_id

    def _resolve_causes(self, ev: EventAnnotation, final: bool) -> list[str] | None:
        causes = ev.targets("Cause")
        unresolved = [t for t in causes if t in self.graph.events and self.cause_interaction(t) is None]
        if unresolved and not final:
            return None
        controllers = []
        for target in causes:
            if target in unresolved:
                self._warn(Code.UNRESOLVED_CAUSE, ev.id, f"{ev.id}: Cause {target} has no realized outcome")
            elif target in self.graph.events:
                controllers.append(self.cause_controller(target))
            else:
                el = self._entity(ev, target, "Cause")
                if el is not None:
                    controllers.append(el.rdf_id)
        return controllers

    def _activity_form(self, entity: BiopaxElement, state: str) -> BiopaxElement:
        form_id = f"{entity.rdf_id}_{state}"
        existing = self.model.elements.get(form_id)
        if existing is not None:
            return existing
        form = self.model.clone(entity, self.model.new_id(form_id))
        self.model.add_feature(form, state)
        return form

    def try_regulation(self, eid: str, final: bool = False) -> bool:
        ev = self.graph.events[eid]
        cls = self.tables.event_to_biopax(ev.event_type)
        if cls is None:
            self._drop(Code.UNMAPPED_TYPE, eid, f"{eid}: no BioPAX class for event type {ev.event_type!r}")
            return True
        themes = ev.targets("Theme")
        entity_themes = [t for t in themes if t not in self.graph.events]
        control_type = _control_type(ev.event_type)

        if not themes:
            if ev.has_role("Cause"):
                self._drop(Code.MODIFIER_ONLY_EVENT, eid, f"{eid}: Cause without Theme has nothing to control")
            else:
                self._drop(Code.UNRESOLVED_THEME, eid, f"{eid}: regulation without Theme or Cause")
            return True

        if entity_themes:
            controllers = self._resolve_causes(ev, final)
            if controllers is None:
                return False
            if len(entity_themes) < len(themes):
                self._warn(Code.UNREALIZED_ROLE, eid, f"{eid}: event Themes ignored next to entity Themes")
            rxn = self._interaction(ev, BiopaxClass.BiochemicalReaction.value)
            rxn.add_comment(eid)
            before, after = ("active", "inactive") if control_type == "INHIBITION" else ("inactive", "active")
            for target in entity_themes:
                theme = self._entity(ev, target, "Theme")
                if theme is not None:
                    rxn.add("left", Ref(self._activity_form(theme, before).rdf_id))
                    rxn.add("right", Ref(self._activity_form(theme, after).rdf_id))
            for controller in controllers:
                self._control(eid, cls.value, rxn.rdf_id, controller, control_type)
            return True

        if not ev.has_role("Cause"):
            self._drop(Code.UNRESOLVED_THEME, eid, f"{eid}: event Theme without a Cause cannot be linked")
            return True
        resolver = self._resolver()
        target = resolver.resolve(eid)
        if target is None:
            if final:
                cyclic = " (cyclic Theme chain)" if eid in resolver.cycles_hit else ""
                if cyclic:
                    self._warn(Code.CYCLIC_THEME, eid, f"{eid}: Theme chain is cyclic")
                self._drop(Code.UNRESOLVED_THEME, eid, f"{eid}: no interaction found along the Theme chain{cyclic}")
                return True
            return False
        controllers = self._resolve_causes(ev, final)
        if controllers is None:
            return False
        if not controllers:
            self._drop(Code.UNRESOLVED_CAUSE, eid, f"{eid}: no Cause could be realized")
            return True
        for k, controller in enumerate(controllers):
            self._control(eid, cls.value, target, controller, control_type, rdf_id=eid if k == 0 else None)
        return True

    def regulation_pass(self, regulations: list[str]) -> None:
        remaining = list(regulations)
        while remaining or self.pending_causes:
            progress = False
            for iid, cause in list(self.pending_causes):
                controller = None
                if self.cause_interaction(cause) is not None:
                    controller = self.cause_controller(cause)
                if controller is not None:
                    self._control(iid, "Control", iid, controller, None)
                    self.pending_causes.remove((iid, cause))
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
            for iid, cause in self.pending_causes:
                self._warn(Code.UNRESOLVED_CAUSE, iid, f"{iid}: Cause {cause} has no realized outcome")
            self.pending_causes.clear()


def _control_type(event_type: str) -> str | None:
    canonical = canonical_event_type(event_type)
    if canonical in _ACTIVATING:
        return "ACTIVATION"
    if canonical in _INHIBITING:
        return "INHIBITION"
    return None


_EXPRESSION_PRODUCT_CLASS = {"Transcription": "Rna", "Translation": "Protein", "Gene_expression": "Protein"}


def synthesize_right(model: BiopaxModel, interaction: BiopaxElement, tables: MappingTables = DEFAULT_TABLES) -> BiopaxElement:
    """Create the missing right side (product for template reactions) of ``interaction``."""
    event_type = interaction.event_type or interaction.class_name
    if interaction.class_name == "TemplateReaction":
        sources = [model.elements[i] for i in interaction.refs("template")]
        cls = _EXPRESSION_PRODUCT_CLASS.get(canonical_event_type(event_type), "PhysicalEntity")
        side = "product"
    else:
        sources = [model.elements[i] for i in interaction.refs("left")]
        cls = sources[0].class_name if sources else "PhysicalEntity"
        side = "right"
    name = product_name(event_type, [s.name or s.rdf_id for s in sources], tables)
    base = f"{interaction.rdf_id}_prod"
    k = 1
    while f"{base}{k}" in model.elements:
        k += 1
    product = BiopaxElement(f"{base}{k}", cls)
    product.add("name", Literal(name))
    if sources and side == "right":
        for loc in sources[0].refs("cellularLocation"):
            product.add("cellularLocation", Ref(loc))
    model.add(product)
    interaction.add(side, Ref(product.rdf_id))
    return product


def synthesize_left(model: BiopaxModel, interaction: BiopaxElement, tables: MappingTables = DEFAULT_TABLES) -> BiopaxElement:
    event_type = interaction.event_type or interaction.class_name
    sources = [model.elements[i] for i in interaction.refs("right")]
    origin = sources[0]
    base = f"{interaction.rdf_id}_reac"
    k = 1
    while f"{base}{k}" in model.elements:
        k += 1
    reactant = BiopaxElement(f"{base}{k}", origin.class_name)
    reactant.add("name", Literal(reactant_name(event_type, origin.name or origin.rdf_id, tables)))
    for loc in origin.refs("cellularLocation"):
        reactant.add("cellularLocation", Ref(loc))
    model.add(reactant)
    interaction.add("left", Ref(reactant.rdf_id))
    return reactant


def default_xml_base(doc_id: str) -> str:
    return DEFAULT_XML_BASE.format(doc_id=quote(doc_id, safe=""))


def convert_to_biopax(
    graph: PathwayGraph,
    options: ConversionOptions | None = None,
    tables: MappingTables = DEFAULT_TABLES,
    xml_base: str | None = None,
) -> tuple[BiopaxModel, list[Diagnostic]]:
    builder = _Builder(graph, tables, xml_base or default_xml_base(graph.doc_id))
    model = builder.run()
    diagnostics = builder.diagnostics
    if options is not None:
        from .postprocess import apply_passes

        apply_passes(model, options, diagnostics, tables)
    return model, diagnostics


# ---------------------------------------------------------------------------
# serialization


def check_model(model: BiopaxModel) -> None:
    """Raise ValueError if a reference dangles or a Control is malformed."""
    for el in model.elements.values():
        for target in el.refs():
            if target not in model.elements:
                raise ValueError(f"{el.rdf_id} references unknown element {target}")
        if el.class_name in CONTROL_CLASSES:
            if len(el.refs("controlled")) != 1 or len(el.refs("controller")) > 1:
                raise ValueError(f"control {el.rdf_id} needs one controlled and at most one controller")


def serialize_biopax(model: BiopaxModel) -> str:
    check_model(model)
    w = XmlWriter()
    w.start(
        "rdf:RDF",
        [
            ("xmlns:rdf", RDF_NS),
            ("xmlns:bp", BP_NS),
            ("xmlns:owl", OWL_NS),
            ("xml:base", model.xml_base),
        ],
    )
    w.start("owl:Ontology", [("rdf:about", "")])
    w.empty("owl:imports", [("rdf:resource", BP_NS)])
    w.end("owl:Ontology")
    for rdf_id in sorted(model.elements, key=natural_key):
        el = model.elements[rdf_id]
        tag = f"bp:{el.class_name}"
        w.start(tag, [("rdf:about", el.rdf_id)])
        for name, value in el.properties:
            if isinstance(value, Ref):
                w.empty(f"bp:{name}", [("rdf:resource", value.id)])
            else:
                w.text(f"bp:{name}", value.value, [("rdf:datatype", value.datatype)])
        for comment in el.comments:
            w.text("bp:comment", comment, [("rdf:datatype", XSD_STRING)])
        w.end(tag)
    w.end("rdf:RDF")
    return w.getvalue()
