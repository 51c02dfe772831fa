"""Command-line entry points: ``st2sbml``, ``st2biopax`` and ``st2pathway``.

Exit codes: 0 success, 1 error-level diagnostics under ``--strict``,
2 usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .biopax import INTERACTION_CLASSES, convert_to_biopax, serialize_biopax
from .diagnostics import Code, Diagnostic, Severity, error
from .graph import build_graph
from .mappings import DEFAULT_TABLES, MappingTables
from .options import ConversionOptions
from .postprocess import apply_passes
from .sbml import convert_to_sbml, serialize_sbml
from .standoff import read_document

log = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = 1
SUFFIX = {"sbml": ".sbml", "biopax": ".owl"}


class UsageError(Exception):
    pass


@dataclass
class DocumentJob:
    doc_id: str
    inputs: list[Path]
    out_dir: Path


@dataclass
class DocumentReport:
    doc_id: str
    inputs: list[str]
    entities: int = 0
    events: int = 0
    species_created: int = 0
    unmapped_entities: int = 0
    compartment_entities: int = 0
    formats: dict[str, dict] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    failed: str | None = None

    @property
    def errors(self) -> int:
        return sum(d.severity is Severity.ERROR for d in self.diagnostics)

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "inputs": self.inputs,
            "entities": self.entities,
            "events": self.events,
            "species_created": self.species_created,
            "unmapped_entities": self.unmapped_entities,
            "compartment_entities": self.compartment_entities,
            "formats": self.formats,
            "errors": self.errors,
            "failed": self.failed,
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }


# ---------------------------------------------------------------------------
# input discovery


def _pair(stem: Path, suffixes: set[str]) -> tuple[list[Path] | None, Diagnostic | None]:
    has_pair = suffixes & {".a1", ".a2"}
    if ".ann" in suffixes and has_pair:
        return None, error(
            Code.LAYOUT_CONFLICT,
            f"{stem.name}: both .ann and .a1/.a2 present; document skipped",
            source=str(stem),
        )
    if ".ann" in suffixes:
        return [stem.with_suffix(".ann")], None
    return [stem.with_suffix(s) for s in (".a1", ".a2") if s in suffixes], None


def discover(paths: list[str], out_dir: str | None) -> tuple[list[DocumentJob], list[Diagnostic]]:
    """Group input files by stem; directories are scanned (non-recursively)."""
    stems: dict[Path, set[str]] = {}
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            for child in p.iterdir():
                if child.suffix in (".ann", ".a1", ".a2") and child.is_file():
                    stems.setdefault(child.with_suffix(""), set()).add(child.suffix)
        elif p.is_file():
            if p.suffix not in (".ann", ".a1", ".a2"):
                raise UsageError(f"{p}: expected a .ann, .a1 or .a2 file")
            stem = p.with_suffix("")
            found = stems.setdefault(stem, set())
            found.add(p.suffix)
            # a lone .a1 or .a2 brings its sibling along
            for sibling in (".a1", ".a2"):
                if p.suffix in (".a1", ".a2") and stem.with_suffix(sibling).is_file():
                    found.add(sibling)
        else:
            raise FileNotFoundError(f"{p}: no such file or directory")

    jobs, problems = [], []
    for stem in sorted(stems, key=str):
        inputs, problem = _pair(stem, stems[stem])
        if problem is not None:
            problems.append(problem)
            continue
        target = Path(out_dir) if out_dir else stem.parent
        jobs.append(DocumentJob(stem.name, inputs, target))
    return jobs, problems


# ---------------------------------------------------------------------------
# conversion


def convert_document(
    job: DocumentJob,
    formats: list[str],
    options: ConversionOptions,
    tables: MappingTables = DEFAULT_TABLES,
    xml_base: str | None = None,
) -> DocumentReport:
    report = DocumentReport(job.doc_id, [str(p) for p in job.inputs])
    doc = read_document(*job.inputs, doc_id=job.doc_id)
    graph = build_graph(doc, tables)
    report.diagnostics.extend(doc.diagnostics)
    report.diagnostics.extend(graph.diagnostics)
    report.entities = len(graph.entities)
    report.events = len(graph.events)

    # entity bookkeeping always comes from the SBML side
    sbml_model, sbml_diagnostics = convert_to_sbml(graph, None, tables)
    report.species_created = sum(1 for t in graph.entities if t in sbml_model.species)
    report.compartment_entities = len(sbml_model.location_entities)
    report.unmapped_entities = sum(
        1
        for tid, tb in graph.entities.items()
        if tables.entity_to_sbo(tb.ann_type) is None and tid not in sbml_model.location_entities
    )
    if report.species_created + report.unmapped_entities + report.compartment_entities != report.entities:
        raise AssertionError(f"{job.doc_id}: entity counts do not reconcile")

    for fmt in formats:
        if fmt == "sbml":
            model, diagnostics = sbml_model, sbml_diagnostics
            apply_passes(model, options, diagnostics, tables)
            text = serialize_sbml(model)
            converted = len(model.reactions)
        else:
            model, diagnostics = convert_to_biopax(graph, None, tables, xml_base)
            apply_passes(model, options, diagnostics, tables)
            text = serialize_biopax(model)
            converted = len(model.of_class(INTERACTION_CLASSES))
        job.out_dir.mkdir(parents=True, exist_ok=True)
        out = job.out_dir / (job.doc_id + SUFFIX[fmt])
        out.write_text(text, encoding="utf-8")
        dropped = Counter(d.code.value for d in diagnostics if d.dropped)
        report.formats[fmt] = {
            "output": str(out),
            "converted": converted,
            "dropped": dict(sorted(dropped.items())),
            "diagnostics": [d.to_dict() for d in diagnostics],
        }
        report.diagnostics.extend(d for d in diagnostics if d not in report.diagnostics)
    return report


# ---------------------------------------------------------------------------
# reporting


def summarize(reports: list[DocumentReport], problems: list[Diagnostic]) -> dict:
    totals: Counter = Counter()
    dropped: dict[str, Counter] = {}
    for r in reports:
        totals.update(
            documents=1,
            entities=r.entities,
            events=r.events,
            species_created=r.species_created,
            unmapped_entities=r.unmapped_entities,
            compartment_entities=r.compartment_entities,
            errors=r.errors,
            failed=int(r.failed is not None),
        )
        for fmt, info in r.formats.items():
            totals[f"{fmt}_converted"] += info["converted"]
            dropped.setdefault(fmt, Counter()).update(info["dropped"])
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "totals": dict(sorted(totals.items())),
        "dropped": {fmt: dict(sorted(c.items())) for fmt, c in sorted(dropped.items())},
        "problems": [p.to_dict() for p in problems],
        "documents": [r.to_dict() for r in reports],
    }


def format_text(summary: dict) -> str:
    lines = []
    for doc in summary["documents"]:
        if doc["failed"]:
            lines.append(f"{doc['doc_id']}: FAILED ({doc['failed']})")
            continue
        parts = [f"{doc['entities']} entities", f"{doc['events']} events"]
        for fmt, info in doc["formats"].items():
            drops = sum(info["dropped"].values())
            parts.append(f"{fmt}: {info['converted']} converted, {drops} dropped")
        lines.append(f"{doc['doc_id']}: " + "; ".join(parts))
    for problem in summary["problems"]:
        lines.append(f"skipped: {problem['message']}")
    t = summary["totals"]
    lines.append(
        f"total: {t.get('documents', 0)} documents, {t.get('entities', 0)} entities, {t.get('events', 0)} events"
    )
    for fmt, codes in summary["dropped"].items():
        detail = ", ".join(f"{code}={n}" for code, n in codes.items()) or "none"
        lines.append(f"dropped ({fmt}): {detail}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument handling


def _add_conversion_args(parser: argparse.ArgumentParser, with_format: bool) -> None:
    parser.add_argument("inputs", nargs="+", help="standoff files (.ann, .a1/.a2) or directories")
    if with_format:
        parser.add_argument("--format", choices=("sbml", "biopax", "both"), default="both")
    parser.add_argument("--out-dir", help="write outputs here instead of next to the inputs")
    parser.add_argument("--remove-unused", action="store_true", help="drop species/entities used by no reaction")
    parser.add_argument("--complete-reactions", action="store_true", help="synthesize missing products/reactants")
    parser.add_argument("--remove-defunct", action="store_true", help="drop reactions with no reactant and no product")
    parser.add_argument("--uniprot", default="off", metavar="{off,tsv:<path>,net}", help="UniProt annotation source")
    parser.add_argument("--xml-base", help="xml:base of BioPAX output")
    parser.add_argument("--mappings", help="TSV overriding the built-in mapping tables")
    parser.add_argument("--strict", action="store_true", help="exit 1 when any document has error diagnostics")
    parser.add_argument("--report", choices=("text", "json"), default="text")
    parser.add_argument("-v", "--verbose", action="store_true", help="print every diagnostic to stderr")


def _options(args) -> ConversionOptions:
    source = args.uniprot
    if source != "off" and source != "net" and not source.startswith("tsv:"):
        raise UsageError(f"--uniprot: expected off, tsv:<path> or net, got {source!r}")
    if source.startswith("tsv:"):
        # load once for the whole batch
        from .uniprot import OfflineResolver

        source = OfflineResolver.load(source[4:])
    elif source == "net":
        from .uniprot import NetworkResolver

        source = NetworkResolver()
    return ConversionOptions(
        remove_unused=args.remove_unused,
        complete_reactions=args.complete_reactions,
        remove_defunct=args.remove_defunct,
        annotate_uniprot=args.uniprot != "off",
        uniprot_source=source,
    )


def _run_conversion(args, formats: list[str]) -> int:
    options = _options(args)
    tables = MappingTables.load(args.mappings) if args.mappings else DEFAULT_TABLES
    jobs, problems = discover(args.inputs, args.out_dir)
    reports = []
    io_failure = False
    for job in jobs:
        try:
            reports.append(convert_document(job, formats, options, tables, args.xml_base))
        except OSError as exc:
            log.error("%s: %s", job.doc_id, exc)
            failed = DocumentReport(job.doc_id, [str(p) for p in job.inputs], failed=str(exc))
            reports.append(failed)
            io_failure = True
            if args.strict:
                break
    summary = summarize(reports, problems)
    if args.verbose:
        for r in reports:
            for d in r.diagnostics:
                print(f"{r.doc_id}: {d}", file=sys.stderr)
    if args.report == "json":
        sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    else:
        sys.stdout.write(format_text(summary))
    if io_failure:
        return 2
    if args.strict and (problems or any(r.errors for r in reports)):
        return 1
    return 0


def _single_format_parser(prog: str, fmt: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=prog, description=f"Convert standoff event annotations to {fmt}.")
    _add_conversion_args(parser, with_format=False)
    return parser


def _main(parser: argparse.ArgumentParser, argv, formats_of) -> int:
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        if getattr(args, "command", "convert") == "mappings":
            tables = MappingTables.load(args.mappings) if args.mappings else DEFAULT_TABLES
            text = tables.to_tsv()
            if args.output:
                Path(args.output).write_text(text, encoding="utf-8")
            else:
                sys.stdout.write(text)
            return 0
        return _run_conversion(args, formats_of(args))
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


def st2sbml(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    return _main(_single_format_parser("st2sbml", "SBML"), argv, lambda a: ["sbml"])


def st2biopax(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    return _main(_single_format_parser("st2biopax", "BioPAX"), argv, lambda a: ["biopax"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="st2pathway", description="Convert standoff event annotations to pathway models.")
    sub = parser.add_subparsers(dest="command", required=True)
    convert = sub.add_parser("convert", help="convert documents to SBML and/or BioPAX")
    _add_conversion_args(convert, with_format=True)
    dump = sub.add_parser("mappings", help="print the mapping tables as TSV")
    dump.add_argument("--mappings", help="TSV to merge over the built-in tables")
    dump.add_argument("-o", "--output", help="write to this file instead of stdout")
    return parser


def run(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv

    def formats(args):
        return ["sbml", "biopax"] if args.format == "both" else [args.format]

    return _main(build_parser(), argv, formats)


def main_st2sbml() -> None:
    sys.exit(st2sbml())


def main_st2biopax() -> None:
    sys.exit(st2biopax())


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
