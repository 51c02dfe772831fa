import io
import json
from unittest import mock

import pytest

from st2pathway import ConversionOptions, convert_to_biopax, convert_to_sbml, serialize_biopax, serialize_sbml
from st2pathway.diagnostics import Code
from st2pathway.uniprot import (
    LookupFailed,
    NetworkResolver,
    OfflineResolver,
    UniprotRecord,
    annotate,
    lookup,
    make_resolver,
)

from .helpers import FIXTURES, graph_of

TSV = FIXTURES / "uniprot.tsv"


@pytest.fixture(scope="module")
def resolver():
    return OfflineResolver.load(TSV)


@pytest.mark.parametrize(
    "name,accession,exact",
    [
        ("Akt1", "P31749", True),
        ("akt1", "P31749", True),
        ("AKT1", "P31749", True),
        ("PKB", "P31749", False),
        ("protein kinase b", "P31749", False),
        ("YAP", "P46937", False),
        ("YAP1", "P46937", True),
    ],
)
def test_offline_matching(resolver, name, accession, exact):
    match = resolver.resolve(name)
    assert match.record.accession == accession
    assert match.exact is exact


def test_unknown_name(resolver):
    assert resolver.resolve("mTORC9") is None


def test_empty_name_rejected(resolver):
    with pytest.raises(ValueError):
        lookup("", resolver)


def test_accession_grammar():
    UniprotRecord("A0A024R161")
    with pytest.raises(ValueError):
        UniprotRecord("12345")


def test_make_resolver_sources(resolver):
    assert make_resolver("off") is None
    assert make_resolver(resolver) is resolver
    assert isinstance(make_resolver(f"tsv:{TSV}"), OfflineResolver)
    with pytest.raises(ValueError):
        make_resolver("ftp:somewhere")


def test_sbml_annotation(resolver):
    model, _ = convert_to_sbml(graph_of("example1.ann"))
    annotate(model, resolver)
    akt = model.species["T2"]
    assert ("is", "http://identifiers.org/uniprot/P31749") in akt.cv_terms
    assert "UniProt: P31749" in akt.notes
    text = serialize_sbml(model)
    assert 'rdf:resource="http://identifiers.org/uniprot/P31749"' in text
    assert "Gene names: AKT1" in text


def test_annotation_is_idempotent(resolver):
    model, _ = convert_to_sbml(graph_of("example1.ann"))
    annotate(model, resolver)
    once = serialize_sbml(model)
    annotate(model, resolver)
    assert serialize_sbml(model) == once

    bmodel, _ = convert_to_biopax(graph_of("example1.ann"))
    annotate(bmodel, resolver)
    once = serialize_biopax(bmodel)
    annotate(bmodel, resolver)
    assert serialize_biopax(bmodel) == once


def test_biopax_xref_kind(resolver):
    model, _ = convert_to_biopax(graph_of("example1.ann"))
    annotate(model, resolver)
    assert model.elements["T2"].refs("xref") == ["UnificationXref_uniprot_P31749"]
    # "YAP" only matches a synonym
    assert model.elements["T1"].refs("xref") == ["RelationshipXref_uniprot_P46937"]
    xref = model.elements["RelationshipXref_uniprot_P46937"]
    assert xref.literal("db") == "UniProt" and xref.literal("id") == "P46937"


def test_off_is_identical_to_plain():
    graph = graph_of("example1.ann")
    plain, _ = convert_to_sbml(graph)
    off, _ = convert_to_sbml(graph, ConversionOptions(annotate_uniprot=True, uniprot_source="off"))
    assert serialize_sbml(off) == serialize_sbml(plain)


def _payload(accession="P31749", gene="AKT1"):
    return {
        "results": [
            {
                "primaryAccession": accession,
                "proteinDescription": {
                    "recommendedName": {"fullName": {"value": "RAC-alpha serine/threonine-protein kinase"}},
                    "alternativeNames": [{"fullName": {"value": "Protein kinase B"}}],
                },
                "genes": [{"geneName": {"value": gene}, "synonyms": [{"value": "PKB"}]}],
            }
        ]
    }


def test_network_resolver_parses_and_caches():
    body = json.dumps(_payload()).encode()
    with mock.patch("urllib.request.urlopen", side_effect=lambda *a, **k: io.BytesIO(body)) as urlopen:
        net = NetworkResolver(endpoint="http://uniprot.invalid/search")
        match = net.resolve("AKT1")
        assert match.record.accession == "P31749" and match.exact
        assert net.resolve("AKT1") is match
        assert urlopen.call_count == 1
        assert urlopen.call_args.args[0].startswith("http://uniprot.invalid/search?")
        assert net.resolve("PKB").exact is False


def test_network_endpoint_from_environment(monkeypatch):
    monkeypatch.setenv("ST2PATHWAY_UNIPROT_URL", "http://mirror.invalid/q")
    assert NetworkResolver().endpoint == "http://mirror.invalid/q"


def test_network_failure_becomes_diagnostic():
    with mock.patch("urllib.request.urlopen", side_effect=OSError("unreachable")):
        net = NetworkResolver(endpoint="http://uniprot.invalid/search")
        with pytest.raises(LookupFailed):
            net.resolve("AKT1")
        diagnostics = []
        assert lookup("AKT1", net, diagnostics) is None
        assert [d.code for d in diagnostics] == [Code.LOOKUP_FAILED]

        model, _ = convert_to_sbml(graph_of("example1.ann"))
        diagnostics = []
        annotate(model, net, diagnostics)
        assert all(not sp.cv_terms for sp in model.species.values())
        assert diagnostics and {d.code for d in diagnostics} == {Code.LOOKUP_FAILED}


def test_empty_search_result():
    body = json.dumps({"results": []}).encode()
    with mock.patch("urllib.request.urlopen", side_effect=lambda *a, **k: io.BytesIO(body)):
        assert NetworkResolver(endpoint="http://x.invalid").resolve("nothing") is None
