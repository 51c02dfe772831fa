"""Resolved intermediate representation shared by the SBML and BioPAX converters."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .diagnostics import Code, Diagnostic, warning
from .ids import natural_key
from .mappings import DEFAULT_TABLES, MappingTables, normalize_key
from .standoff import EventAnnotation, StandoffDocument, TextBoundAnnotation


class EventCategory(str, enum.Enum):
    Conversion = "Conversion"
    GeneExpression = "GeneExpression"
    Localization = "Localization"
    Regulation = "Regulation"
    Degradation = "Degradation"
    BindingDissociation = "BindingDissociation"
    Pathway = "Pathway"
    Unknown = "Unknown"


_CATEGORIES = {
    EventCategory.Conversion: (
        "Phosphorylation",
        "Dephosphorylation",
        "Acetylation",
        "Deacetylation",
        "Methylation",
        "Demethylation",
        "Ubiquitination",
        "Deubiquitination",
        "Conversion",
    ),
    EventCategory.GeneExpression: ("Gene_expression", "Transcription", "Translation"),
    EventCategory.Localization: ("Localization", "Transport"),
    EventCategory.Regulation: (
        "Regulation",
        "Positive_regulation",
        "Negative_regulation",
        "Activation",
        "Inactivation",
        "Catalysis",
    ),
    EventCategory.Degradation: ("Degradation", "Catabolism", "Protein_catabolism"),
    EventCategory.BindingDissociation: ("Association", "Binding", "Dissociation"),
    EventCategory.Pathway: ("Pathway",),
}
_CATEGORY_OF = {normalize_key(t): cat for cat, types in _CATEGORIES.items() for t in types}


def classify_event(event_type: str) -> EventCategory:
    return _CATEGORY_OF.get(normalize_key(event_type), EventCategory.Unknown)


def canonical_event_type(event_type: str) -> str:
    """Canonical spelling of a known event type (``gene_Expression`` -> ``Gene_expression``)."""
    for types in _CATEGORIES.values():
        for t in types:
            if normalize_key(t) == normalize_key(event_type):
                return t
    return event_type


@dataclass
class PathwayGraph:
    doc_id: str
    entities: dict[str, TextBoundAnnotation] = field(default_factory=dict)
    event_triggers: dict[str, TextBoundAnnotation] = field(default_factory=dict)
    events: dict[str, EventAnnotation] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    # events lying on a Theme cycle
    cyclic: frozenset[str] = frozenset()
    locations: dict[str, tuple[str, int]] = field(default_factory=dict)

    def category(self, event_id: str) -> EventCategory:
        return classify_event(self.events[event_id].event_type)

    def is_event(self, ann_id: str) -> bool:
        return ann_id in self.events

    def is_entity(self, ann_id: str) -> bool:
        return ann_id in self.entities

    def theme_events(self, event_id: str) -> list[str]:
        return [t for t in self.events[event_id].targets("Theme") if t in self.events]

    def location(self, ann_id: str) -> tuple[str | None, int | None]:
        return self.locations.get(ann_id, (None, None))


def build_graph(doc: StandoffDocument, tables: MappingTables = DEFAULT_TABLES) -> PathwayGraph:
    graph = PathwayGraph(doc.doc_id, locations=dict(doc.locations))

    for tid in sorted(doc.triggers, key=natural_key):
        tb = doc.triggers[tid]
        if tables.is_event_type(tb.ann_type):
            graph.event_triggers[tid] = tb
        else:
            graph.entities[tid] = tb
            if not tables.is_entity_type(tb.ann_type):
                graph.diagnostics.append(_diag(graph, Code.UNKNOWN_TYPE, tid, f"{tid}: unknown annotation type {tb.ann_type!r}"))

    for eid in sorted(doc.events, key=natural_key):
        graph.events[eid] = doc.events[eid]

    graph.cyclic = frozenset(_cyclic_events(graph))
    for eid, ev in graph.events.items():
        if eid in graph.cyclic:
            graph.diagnostics.append(_diag(graph, Code.CYCLIC_THEME, eid, f"{eid}: Theme chain returns to {eid}"))
        category = classify_event(ev.event_type)
        if category is EventCategory.Localization and _theme_only(ev):
            graph.diagnostics.append(
                _diag(graph, Code.THEME_ONLY_LOCALIZATION, eid, f"{eid}: {ev.event_type} has a Theme but no location role")
            )
        if ev.has_role("Cause") and not any(ev.has_role(r) for r in ("Theme", "Product", "Participant", "Complex")):
            graph.diagnostics.append(_diag(graph, Code.MODIFIER_ONLY_EVENT, eid, f"{eid}: Cause without any Theme"))
    return graph


def _diag(graph: PathwayGraph, code: Code, ref: str, message: str) -> Diagnostic:
    source, line = graph.location(ref)
    return warning(code, message, line, source=source, ref=ref)


def _theme_only(ev: EventAnnotation) -> bool:
    return ev.has_role("Theme") and not any(ev.has_role(r) for r in ("AtLoc", "FromLoc", "ToLoc"))


def _cyclic_events(graph: PathwayGraph) -> set[str]:
    """Events that can reach themselves through Theme edges (Tarjan SCC, iterative)."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    cyclic: set[str] = set()
    counter = 0

    for root in graph.events:
        if root in index:
            continue
        work = [(root, iter(graph.theme_events(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, successors = work[-1]
            advanced = False
            for succ in successors:
                if succ not in index:
                    index[succ] = low[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(graph.theme_events(succ))))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                if len(component) > 1 or node in graph.theme_events(node):
                    cyclic.update(component)
    return cyclic


class ThemeChainResolver:
    """Follows Theme links from a regulation down to an event that was realized.

    ``realized`` is the set of event ids that became reactions/interactions.
    The search is depth-first in role order; the first realized event found
    wins.  Results are cached per start event, so a resolver must not outlive
    a change to ``realized``.
    """

    def __init__(self, graph: PathwayGraph, realized, memoize: bool = True):
        self.graph = graph
        self.realized = frozenset(realized)
        self.memoize = memoize
        self._cache: dict[str, str | None] = {}
        self.cycles_hit: set[str] = set()

    def resolve(self, event_id: str) -> str | None:
        if self.memoize and event_id in self._cache:
            return self._cache[event_id]
        result = self._search(event_id)
        if self.memoize:
            self._cache[event_id] = result
        return result

    def _search(self, start: str) -> str | None:
        events = self.graph.events
        if start not in events:
            return None
        visited = {start}
        pending = list(reversed(events[start].targets("Theme")))
        while pending:
            target = pending.pop()
            if target in self.realized:
                return target
            if target not in events or target in visited:
                continue
            visited.add(target)
            pending.extend(reversed(events[target].targets("Theme")))
        if visited & self.graph.cyclic:
            self.cycles_hit.add(start)
        return None


def resolve_theme_chain(
    graph: PathwayGraph,
    event_id: str,
    realized,
    diagnostics: list[Diagnostic] | None = None,
) -> str | None:
    """Return the realized event reached through ``event_id``'s Theme chain, or None."""
    resolver = ThemeChainResolver(graph, realized)
    result = resolver.resolve(event_id)
    if result is None and diagnostics is not None and event_id in resolver.cycles_hit:
        diagnostics.append(_diag(graph, Code.CYCLIC_THEME, event_id, f"{event_id}: Theme chain is cyclic"))
    return result
