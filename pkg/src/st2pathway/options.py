from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass
class ConversionOptions:
    """Optional cleanup/annotation passes; all off by default.

    ``uniprot_source`` is ``"tsv:<path>"``, ``"net"``, or an already built
    resolver object (anything with a ``resolve(name)`` method).
    """

    remove_unused: bool = False
    complete_reactions: bool = False
    remove_defunct: bool = False
    annotate_uniprot: bool = False
    uniprot_source: Any = None
