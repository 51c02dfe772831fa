"""Names for species/entities synthesized when reactions are completed.

A phosphorylation product of ``Akt1`` is called ``phoAkt1``; the other
modification prefixes live in the ``name_prefix`` mapping table.
De-modifications yield ``<theme>_demod``.  Binding products join the
partner names with ``:``.  Anything else is ``<lowercase type>_<theme>``.
"""

from __future__ import annotations

from .graph import canonical_event_type
from .mappings import DEMODIFICATIONS, MappingTables, normalize_key

_BINDING = {normalize_key(t) for t in ("Binding", "Association")}


def product_name(event_type: str, theme_names: list[str], tables: MappingTables) -> str:
    theme = theme_names[0] if theme_names else event_type
    if normalize_key(event_type) in _BINDING and theme_names:
        return ":".join(theme_names)
    prefix = tables.name_prefix_for(event_type)
    if prefix:
        return prefix + theme
    if canonical_event_type(event_type) in DEMODIFICATIONS:
        return theme + "_demod"
    return f"{event_type.lower()}_{theme}"


def reactant_name(event_type: str, product: str, tables: MappingTables) -> str:
    prefix = tables.name_prefix_for(event_type)
    if prefix and product.startswith(prefix) and len(product) > len(prefix):
        return product[len(prefix):]
    undone = DEMODIFICATIONS.get(canonical_event_type(event_type))
    if undone:
        base = product[: -len("_demod")] if product.endswith("_demod") else product
        return (tables.name_prefix_for(undone) or undone.lower() + "_") + base
    return "pre_" + product
