"""Optional cleanup passes applied after conversion.

Every pass works on both model kinds (dispatch on the model type), mutates
the model in place and is idempotent.  ``apply_passes`` runs the enabled ones
in a fixed order: remove unused, complete reactions, remove defunct, then
UniProt annotation.
"""

from __future__ import annotations

import logging
from functools import singledispatch

from .biopax import (
    CONTROL_CLASSES,
    CONVERSION_CLASSES,
    ENTITY_CLASSES,
    PARTICIPANT_PROPERTIES,
    UTILITY_CLASSES,
    BiopaxModel,
    synthesize_left,
    synthesize_right,
)
from .diagnostics import Code, Diagnostic, warning
from .graph import EventCategory, classify_event
from .mappings import DEFAULT_TABLES, MappingTables
from .naming import reactant_name
from .options import ConversionOptions
from .sbml import SbmlModel, synthesize_product

log = logging.getLogger(__name__)


def _exempt_from_products(event_type: str) -> bool:
    return classify_event(event_type) is EventCategory.Degradation


# ---------------------------------------------------------------------------
# remove unused


@singledispatch
def remove_unused(model) -> list[str]:
    """Delete entities that take part in no reaction; return the removed ids."""
    raise TypeError(f"unsupported model type {type(model).__name__}")


@remove_unused.register
def _(model: SbmlModel) -> list[str]:
    used = model.referenced_species()
    removed = [sid for sid in model.species if sid not in used]
    for sid in removed:
        del model.species[sid]
    # compartments stay: they record locations even when nothing is in them
    return removed


@remove_unused.register
def _(model: BiopaxModel) -> list[str]:
    used: set[str] = set()
    for el in model.elements.values():
        if el.class_name not in ENTITY_CLASSES:
            for prop in PARTICIPANT_PROPERTIES:
                used.update(el.refs(prop))
    removed = [i for i, el in model.elements.items() if el.class_name in ENTITY_CLASSES and i not in used]
    for rdf_id in removed:
        del model.elements[rdf_id]
    # utility elements hanging off removed entities; locations are kept
    while True:
        referenced = {r for el in model.elements.values() for r in el.refs()}
        orphans = [
            i
            for i, el in model.elements.items()
            if el.class_name in UTILITY_CLASSES
            and el.class_name != "CellularLocationVocabulary"
            and i not in referenced
        ]
        if not orphans:
            break
        for rdf_id in orphans:
            del model.elements[rdf_id]
        removed.extend(orphans)
    return removed


# ---------------------------------------------------------------------------
# complete reactions


@singledispatch
def complete_reactions(model, tables: MappingTables = DEFAULT_TABLES) -> list[str]:
    """Synthesize missing products/reactants; return the ids created."""
    raise TypeError(f"unsupported model type {type(model).__name__}")


@complete_reactions.register
def _(model: SbmlModel, tables: MappingTables = DEFAULT_TABLES) -> list[str]:
    created = []
    for rxn in list(model.reactions.values()):
        expression = rxn.category is EventCategory.GeneExpression
        has_source = rxn.reactants or (expression and rxn.modifiers)
        if not rxn.products and has_source and not _exempt_from_products(rxn.name):
            created.append(synthesize_product(model, rxn, tables).id)
        if not rxn.reactants and rxn.products and not expression and not _exempt_from_products(rxn.name):
            origin = model.species[rxn.products[0]]
            name = reactant_name(rxn.name, origin.name, tables)
            reactant = model.synthesize_species(f"{rxn.id}_reac", name, origin)
            rxn.add("reactants", reactant.id)
            created.append(reactant.id)
    return created


@complete_reactions.register
def _(model: BiopaxModel, tables: MappingTables = DEFAULT_TABLES) -> list[str]:
    created = []
    for el in list(model.elements.values()):
        event_type = el.event_type or el.class_name
        if el.class_name == "TemplateReaction":
            if not el.refs("product") and el.refs("template"):
                created.append(synthesize_right(model, el, tables).rdf_id)
        elif el.class_name in CONVERSION_CLASSES and not _exempt_from_products(event_type):
            if el.class_name == "Degradation":
                continue
            if not el.refs("right") and el.refs("left"):
                created.append(synthesize_right(model, el, tables).rdf_id)
            if not el.refs("left") and el.refs("right"):
                created.append(synthesize_left(model, el, tables).rdf_id)
    return created


# ---------------------------------------------------------------------------
# remove defunct


def _drop(diagnostics, code: Code, ref: str, message: str) -> None:
    if diagnostics is not None:
        diagnostics.append(warning(code, message, ref=ref, dropped=True))


@singledispatch
def remove_defunct(model, diagnostics: list[Diagnostic] | None = None) -> list[str]:
    """Delete reactions with neither reactants nor products; return their ids."""
    raise TypeError(f"unsupported model type {type(model).__name__}")


@remove_defunct.register
def _(model: SbmlModel, diagnostics: list[Diagnostic] | None = None) -> list[str]:
    removed = []
    for rid, rxn in list(model.reactions.items()):
        if rxn.reactants or rxn.products:
            continue
        del model.reactions[rid]
        removed.append(rid)
        if rxn.modifiers:
            _drop(diagnostics, Code.MODIFIER_ONLY_EVENT, rid, f"{rid}: only modifiers left; reaction removed")
        else:
            _drop(diagnostics, Code.UNRESOLVED_THEME, rid, f"{rid}: no participants; reaction removed")
    return removed


@remove_defunct.register
def _(model: BiopaxModel, diagnostics: list[Diagnostic] | None = None) -> list[str]:
    removed = []
    controlled_by: dict[str, list[str]] = {}
    for el in model.of_class(CONTROL_CLASSES):
        for target in el.refs("controlled"):
            controlled_by.setdefault(target, []).append(el.rdf_id)

    for iid, el in list(model.elements.items()):
        if el.class_name == "TemplateReaction":
            defunct = not el.refs("product")
            modifiers = bool(el.refs("template"))
        elif el.class_name in CONVERSION_CLASSES:
            defunct = not el.refs("left") and not el.refs("right")
            modifiers = False
        else:
            continue
        if not defunct:
            continue
        modifiers = modifiers or any(model.elements[c].refs("controller") for c in controlled_by.get(iid, ()))
        del model.elements[iid]
        removed.append(iid)
        if modifiers:
            _drop(diagnostics, Code.MODIFIER_ONLY_EVENT, iid, f"{iid}: only controllers left; interaction removed")
        else:
            _drop(diagnostics, Code.UNRESOLVED_THEME, iid, f"{iid}: no participants; interaction removed")

    # controls of removed interactions go too (controls may control controls)
    while True:
        stale = [
            el.rdf_id
            for el in model.of_class(CONTROL_CLASSES)
            if any(t not in model.elements for t in el.refs("controlled"))
        ]
        if not stale:
            break
        for cid in stale:
            del model.elements[cid]
            removed.append(cid)
            if "_" not in cid:
                _drop(diagnostics, Code.UNRESOLVED_THEME, cid, f"{cid}: controlled interaction was removed")
    return removed


# ---------------------------------------------------------------------------


def apply_passes(
    model,
    options: ConversionOptions,
    diagnostics: list[Diagnostic],
    tables: MappingTables = DEFAULT_TABLES,
) -> None:
    if options.remove_unused:
        log.debug("removed unused: %s", remove_unused(model))
    if options.complete_reactions:
        log.debug("completed: %s", complete_reactions(model, tables))
    if options.remove_defunct:
        removed = remove_defunct(model, diagnostics)
        log.debug("removed defunct: %s", removed)
        if removed and options.remove_unused:
            # participants of the deleted reactions may now be unused
            remove_unused(model)
    if options.annotate_uniprot:
        from .uniprot import annotate, make_resolver

        annotate(model, make_resolver(options.uniprot_source), diagnostics)
