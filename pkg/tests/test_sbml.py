import pytest

from st2pathway import ConversionOptions, convert_to_sbml, serialize_sbml
from st2pathway.diagnostics import Code
from st2pathway.sbml import expression_role

from .helpers import graph_from_text, graph_of


@pytest.fixture(scope="module")
def mixed():
    return convert_to_sbml(graph_of("mixed.ann"))


def test_site_goes_to_notes(mixed):
    model, _ = mixed
    assert model.reactions["E1"].notes == ["Site: S473 (T5)"]
    assert "<p>Site: S473 (T5)</p>" in serialize_sbml(model)


def test_go_terms_become_annotation_not_sbo(mixed):
    model, _ = mixed
    text = serialize_sbml(model)
    assert '<reaction metaid="metaid_0000E10" id="E10" name="Deacetylation" reversible="false">' in text
    assert '<rdf:li rdf:resource="http://identifiers.org/go/GO:0006476"/>' in text


def test_gene_expression_theme_gene_is_modifier(mixed):
    model, _ = mixed
    e2 = model.reactions["E2"]
    assert (e2.reactants, e2.products, e2.modifiers) == ([], [], ["T3"])


def test_binding_and_event_cause_product(mixed):
    model, _ = mixed
    assert model.reactions["E3"].reactants == ["T1", "T4"]
    (complex_id,) = model.reactions["E3"].products
    assert model.species[complex_id].name == "YAP:p53"
    assert model.reactions["E7"].modifiers == [complex_id]


def test_entity_theme_regulation_with_event_cause(mixed):
    model, _ = mixed
    e4 = model.reactions["E4"]
    assert e4.reactants == ["T4"]
    (modifier,) = e4.modifiers
    assert model.species[modifier].name == "phoAkt1"
    assert model.reactions["E1"].products == [modifier]


def test_regulation_without_cause_keeps_reactant(mixed):
    model, _ = mixed
    assert model.reactions["E5"].reactants == ["T2"] and model.reactions["E5"].modifiers == []


def test_cause_only_regulation_is_modifier_only(mixed):
    model, _ = mixed
    e6 = model.reactions["E6"]
    assert (e6.reactants, e6.products, e6.modifiers) == ([], [], ["T1"])


def test_pathway_and_unmapped(mixed):
    model, diagnostics = mixed
    assert "E8" in model.reactions
    assert "E9" not in model.reactions
    by_ref = {(d.ref, d.code) for d in diagnostics}
    assert ("E8", Code.PATHWAY_EVENT) in by_ref
    assert ("E9", Code.UNMAPPED_TYPE) in by_ref
    assert all(d.dropped for d in diagnostics if d.code is Code.UNMAPPED_TYPE)


def test_unmapped_entity_is_not_a_species(mixed):
    model, _ = mixed
    assert "T5" not in model.species


@pytest.mark.parametrize(
    "event,theme,role",
    [
        ("Transcription", "Gene", "modifiers"),
        ("Transcription", "Dna", "modifiers"),
        ("Transcription", "Rna", "products"),
        ("Translation", "Rna", "modifiers"),
        ("Translation", "Protein", "products"),
        ("Gene_expression", "Protein", "products"),
        ("Gene_expression", "Dna", "modifiers"),
    ],
)
def test_expression_roles(event, theme, role):
    assert expression_role(event, theme) == (role, False)


def test_coarse_expression_theme_flagged():
    graph = graph_from_text("T1\tGene_or_gene_product 0 3\tMYC\nT2\tGene_expression 4 9\texpr\nE1\tGene_expression:T2 Theme:T1\n")
    model, diagnostics = convert_to_sbml(graph)
    assert model.reactions["E1"].products == ["T1"]
    assert [d.code for d in diagnostics] == [Code.GRANULARITY]


def test_dissociation_roles():
    graph = graph_from_text(
        "T1\tComplex 0 3\tAB\nT2\tProtein 4 5\tA\nT3\tProtein 6 7\tB\nT4\tDissociation 8 9\tsplits\n"
        "E1\tDissociation:T4 Complex:T1 Participant:T2 Participant2:T3\n"
    )
    model, _ = convert_to_sbml(graph)
    assert model.reactions["E1"].reactants == ["T1"]
    assert model.reactions["E1"].products == ["T2", "T3"]


def test_event_theme_regulation_without_cause_dropped():
    graph = graph_from_text(
        "T1\tProtein 0 3\tAkt\nT2\tPhosphorylation 4 8\tphos\nT3\tRegulation 9 12\treg\n"
        "E1\tPhosphorylation:T2 Theme:T1\nE2\tRegulation:T3 Theme:E1\n"
    )
    model, diagnostics = convert_to_sbml(graph)
    assert set(model.reactions) == {"E1"}
    assert [(d.ref, d.code, d.dropped) for d in diagnostics] == [("E2", Code.UNRESOLVED_THEME, True)]


def test_cyclic_regulation_terminates():
    graph = graph_from_text(
        "T1\tProtein 0 3\tAkt\nT3\tRegulation 9 12\treg\nE1\tRegulation:T3 Theme:E2 Cause:T1\nE2\tRegulation:T3 Theme:E1 Cause:T1\n"
    )
    model, diagnostics = convert_to_sbml(graph)
    assert model.reactions == {}
    assert {d.ref for d in diagnostics if d.dropped} == {"E1", "E2"}


def test_regulation_of_regulation_with_event_cause_order_independent():
    # E1 is regulated by E3's product; E3 appears later in the file
    text = (
        "T1\tProtein 0 3\tA\nT2\tProtein 4 5\tB\nT3\tPhosphorylation 6 7\tp\nT4\tPositive_regulation 8 9\tup\n"
        "E1\tPhosphorylation:T3 Theme:T1\nE2\tPositive_regulation:T4 Theme:E1 Cause:E3\nE3\tPhosphorylation:T3 Theme:T2\n"
    )
    model, diagnostics = convert_to_sbml(graph_from_text(text))
    (modifier,) = model.reactions["E1"].modifiers
    assert model.reactions["E3"].products == [modifier]
    assert model.species[modifier].name == "phoB"


def test_atloc_then_transport_reuses_compartments():
    text = (
        "T1\tProtein 0 3\tA\nT2\tCellular_component 4 9\tNucleus\nT3\tLocalization 10 11\tl\nT4\tCellular_component 12 20\tcytoplasm\n"
        "E1\tLocalization:T3 Theme:T1 AtLoc:T2\nE2\tLocalization:T3 Theme:T1 FromLoc:T2 ToLoc:T4\n"
    )
    model, _ = convert_to_sbml(graph_from_text(text))
    assert set(model.compartments) == {"default", "nucleus", "cytoplasm"}
    e2 = model.reactions["E2"]
    assert model.species[e2.reactants[0]].compartment == "nucleus"
    assert model.species[e2.products[0]].compartment == "cytoplasm"
    assert model.location_entities == {"T2", "T4"}


def test_serialization_is_escaped():
    graph = graph_from_text('T1\tProtein 0 3\tA<&>"B\n')
    text = serialize_sbml(convert_to_sbml(graph)[0])
    assert 'name="A&lt;&amp;&gt;&quot;B"' in text


def test_options_none_equals_all_off():
    graph = graph_of("mixed.ann")
    assert serialize_sbml(convert_to_sbml(graph)[0]) == serialize_sbml(convert_to_sbml(graph, ConversionOptions())[0])
