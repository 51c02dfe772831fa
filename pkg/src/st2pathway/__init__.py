"""Convert standoff biomedical event annotations into SBML and BioPAX models."""

from .biopax import BiopaxModel, convert_to_biopax, serialize_biopax
from .diagnostics import Code, Diagnostic, Severity
from .graph import PathwayGraph, ThemeChainResolver, build_graph, resolve_theme_chain
from .mappings import DEFAULT_TABLES, MappingTables, OntologyTerm
from .options import ConversionOptions
from .postprocess import complete_reactions, remove_defunct, remove_unused
from .sbml import SbmlModel, convert_to_sbml, serialize_sbml
from .standoff import StandoffDocument, parse_document, parse_line, read_document, to_standoff
from .uniprot import OfflineResolver, UniprotRecord, annotate, lookup

__version__ = "0.1.0"

__all__ = [
    "BiopaxModel",
    "Code",
    "ConversionOptions",
    "DEFAULT_TABLES",
    "Diagnostic",
    "MappingTables",
    "OfflineResolver",
    "OntologyTerm",
    "PathwayGraph",
    "SbmlModel",
    "Severity",
    "StandoffDocument",
    "ThemeChainResolver",
    "UniprotRecord",
    "annotate",
    "build_graph",
    "complete_reactions",
    "convert_to_biopax",
    "convert_to_sbml",
    "lookup",
    "parse_document",
    "parse_line",
    "read_document",
    "remove_defunct",
    "remove_unused",
    "resolve_theme_chain",
    "serialize_biopax",
    "serialize_sbml",
    "to_standoff",
]
