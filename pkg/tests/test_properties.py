"""Property-based checks over generated documents and event graphs."""

import re
import xml.etree.ElementTree as ET

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from st2pathway import (
    ConversionOptions,
    ThemeChainResolver,
    build_graph,
    convert_to_biopax,
    convert_to_sbml,
    parse_document,
    serialize_biopax,
    serialize_sbml,
    to_standoff,
)
from st2pathway.biopax import RDF_NS
from st2pathway.postprocess import apply_passes, complete_reactions, remove_defunct, remove_unused
from st2pathway.graph import EventCategory, PathwayGraph, _cyclic_events, classify_event
from st2pathway.sbml import SBML_NS
from st2pathway.standoff import ROLES, EventAnnotation, RoleBinding, TextBoundAnnotation

ac8 = pytest.mark.criterion("AC8", "property suite")
S = f"{{{SBML_NS}}}"
RDF = f"{{{RDF_NS}}}"

ENTITY_TYPES = ["Protein", "Protein", "Complex", "Dna", "Rna", "Gene", "Entity", "Cellular_component", "Simple_molecule", "Widget"]
EVENT_TYPES = [
    "Phosphorylation", "Dephosphorylation", "Ubiquitination", "Acetylation", "Conversion",
    "Gene_expression", "Transcription", "Translation",
    "Localization", "Transport",
    "Regulation", "Positive_regulation", "Negative_regulation", "Activation", "Inactivation", "Catalysis",
    "Degradation", "Binding", "Dissociation", "Pathway", "Teleportation",
]
ALL_OPTIONS = ConversionOptions(remove_unused=True, complete_reactions=True, remove_defunct=True)

ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-+/()'\u03b1\u03baé"
words = st.text(alphabet=ALPHABET, min_size=1, max_size=12)
span_text = st.lists(words, min_size=1, max_size=3).map(" ".join)
type_names = st.builds(
    str.__add__,
    st.sampled_from("ABCDEFGHIJKLMNOPQRSTUVWXYZ"),
    st.text(alphabet="abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_", max_size=14),
)


@st.composite
def standoff_documents(draw):
    """Structural documents for parse round-trips (types and targets arbitrary)."""
    n_t = draw(st.integers(0, 12))
    n_e = draw(st.integers(0, 10))
    t_ids = draw(st.lists(st.integers(1, 999), min_size=n_t, max_size=n_t, unique=True))
    e_ids = draw(st.lists(st.integers(1, 999), min_size=n_e, max_size=n_e, unique=True))
    triggers = []
    for i in t_ids:
        start = draw(st.integers(0, 5000))
        triggers.append(TextBoundAnnotation(f"T{i}", draw(type_names), start, start + draw(st.integers(1, 60)), draw(span_text)))
    targets = [f"T{i}" for i in t_ids] + [f"E{i}" for i in e_ids] or ["T1"]
    events = []
    for i in e_ids:
        roles = draw(
            st.lists(
                st.builds(RoleBinding, st.sampled_from(ROLES), st.integers(1, 3), st.sampled_from(targets)),
                max_size=5,
            )
        )
        trigger = draw(st.sampled_from([f"T{i}" for i in t_ids] or ["T1"]))
        events.append(EventAnnotation(f"E{i}", draw(type_names), trigger, tuple(roles)))
    return triggers, events


def _render(triggers, events):
    return "".join(t.to_standoff() + "\n" for t in triggers) + "".join(e.to_standoff() + "\n" for e in events)


@ac8
@settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(standoff_documents())
def test_parse_round_trip(doc_parts):
    triggers, events = doc_parts
    text = _render(triggers, events)
    doc = parse_document("gen", [("gen.ann", text)])
    assert not [d for d in doc.diagnostics if d.severity.value == "error"]
    assert doc.triggers == {t.id: t for t in triggers}
    assert doc.events == {e.id: e for e in events}
    again = parse_document("gen", [("gen.ann", to_standoff(doc))])
    assert again.triggers == doc.triggers and again.events == doc.events
    assert to_standoff(again) == to_standoff(doc)


@st.composite
def semantic_documents(draw, max_events=25):
    """Documents drawn from the real vocabularies so conversion has work to do."""
    n_t = draw(st.integers(1, 15))
    n_e = draw(st.integers(0, max_events))
    lines = []
    for i in range(1, n_t + 1):
        lines.append(f"T{i}\t{draw(st.sampled_from(ENTITY_TYPES))} {i * 10} {i * 10 + 5}\t{draw(words)}")
    trig = n_t
    entity_ids = [f"T{i}" for i in range(1, n_t + 1)]
    event_ids = [f"E{i}" for i in range(1, n_e + 1)]
    for j in range(1, n_e + 1):
        trig += 1
        etype = draw(st.sampled_from(EVENT_TYPES))
        lines.append(f"T{trig}\t{etype} {trig * 10} {trig * 10 + 4}\t{etype.lower()}")
        roles = []
        for role in draw(st.lists(st.sampled_from(ROLES), max_size=4)):
            pool = entity_ids + event_ids if role in ("Theme", "Cause") else entity_ids
            roles.append(f"{role}:{draw(st.sampled_from(pool))}")
        lines.append(f"E{j}\t{etype}:T{trig} " + " ".join(roles))
    return "\n".join(lines) + "\n"


def _graph(text):
    return build_graph(parse_document("gen", [("gen.ann", text)]))


def _both(graph, options=None):
    return (
        serialize_sbml(convert_to_sbml(graph, options)[0]),
        serialize_biopax(convert_to_biopax(graph, options)[0]),
    )


fast = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@ac8
@fast
@given(semantic_documents(), st.booleans())
def test_conversion_is_deterministic(text, cleanup):
    options = ALL_OPTIONS if cleanup else None
    assert _both(_graph(text), options) == _both(_graph(text), options)


@ac8
@fast
@given(semantic_documents())
def test_cleanup_passes_are_idempotent(text):
    graph = _graph(text)
    for convert, serialize in ((convert_to_sbml, serialize_sbml), (convert_to_biopax, serialize_biopax)):
        model, _ = convert(graph, ALL_OPTIONS)
        once = serialize(model)
        apply_passes(model, ALL_OPTIONS, [])
        assert serialize(model) == once
        for single in (remove_unused, complete_reactions, remove_defunct):
            fresh, _ = convert(graph)
            single(fresh)
            snapshot = serialize(fresh)
            single(fresh)
            assert serialize(fresh) == snapshot


def _check_sbml_closure(text):
    model = ET.fromstring(text.encode()).find(f"{S}model")
    compartments = {c.get("id") for c in model.iter(f"{S}compartment")}
    species = {s.get("id"): s for s in model.iter(f"{S}species")}
    assert "default" in compartments
    for sp in species.values():
        assert sp.get("compartment") in compartments
    for ref in model.iter(f"{S}speciesReference"):
        assert ref.get("species") in species
    for ref in model.iter(f"{S}modifierSpeciesReference"):
        assert ref.get("species") in species


def _check_biopax_closure(text):
    root = ET.fromstring(text.encode())
    defined = {el.get(f"{RDF}about") for el in root}
    for el in root.iter():
        target = el.get(f"{RDF}resource")
        if target is not None and not el.tag.endswith("imports"):
            assert target in defined, target


@ac8
@fast
@given(semantic_documents(), st.booleans())
def test_referential_closure(text, cleanup):
    sbml_text, owl_text = _both(_graph(text), ALL_OPTIONS if cleanup else None)
    _check_sbml_closure(sbml_text)
    _check_biopax_closure(owl_text)


@ac8
@fast
@given(semantic_documents())
def test_reactions_never_reversible(text):
    sbml_text, _ = _both(_graph(text), ALL_OPTIONS)
    assert 'reversible="true"' not in sbml_text
    assert len(re.findall(r"<reaction ", sbml_text)) == len(re.findall(r'<reaction [^>]*reversible="false"', sbml_text))


@ac8
@fast
@given(semantic_documents())
def test_metaid_law(text):
    sbml_text, _ = _both(_graph(text), ALL_OPTIONS)
    model = ET.fromstring(sbml_text.encode()).find(f"{S}model")
    metaids = []
    for el in list(model.iter(f"{S}species")) + list(model.iter(f"{S}reaction")):
        assert el.get("metaid") == "metaid_0000" + el.get("id")
        metaids.append(el.get("metaid"))
    assert len(metaids) == len(set(metaids))


@ac8
@fast
@given(semantic_documents(), st.booleans())
def test_gene_expression_has_no_reactants(text, cleanup):
    graph = _graph(text)
    model, _ = convert_to_sbml(graph, ALL_OPTIONS if cleanup else None)
    for rxn in model.reactions.values():
        if classify_event(rxn.name) is EventCategory.GeneExpression:
            assert rxn.reactants == []


@st.composite
def theme_graphs(draw):
    n = draw(st.integers(1, 200))
    events = {}
    for i in range(1, n + 1):
        themes = draw(st.lists(st.integers(1, n), max_size=3))
        roles = tuple(RoleBinding("Theme", 1, f"E{t}") for t in themes)
        events[f"E{i}"] = EventAnnotation(f"E{i}", "Positive_regulation", f"T{i}", roles)
    realized = {f"E{i}" for i in draw(st.sets(st.integers(1, n), max_size=n // 4 + 1))}
    return events, realized


def _reachable(graph, start):
    seen, todo = set(), list(graph.theme_events(start))
    while todo:
        eid = todo.pop()
        if eid not in seen:
            seen.add(eid)
            todo.extend(graph.theme_events(eid))
    return seen


@ac8
@settings(max_examples=150, deadline=None)
@given(theme_graphs())
def test_theme_chain_terminates_on_random_graphs(parts):
    events, realized = parts
    graph = PathwayGraph("g", events=events)
    graph.cyclic = frozenset(_cyclic_events(graph))
    memo = ThemeChainResolver(graph, realized)
    plain = ThemeChainResolver(graph, realized, memoize=False)
    for eid in events:
        result = memo.resolve(eid)
        assert result == plain.resolve(eid)
        reachable = _reachable(graph, eid)
        if result is None:
            assert not (reachable & realized)
        else:
            assert result in realized and result in reachable
