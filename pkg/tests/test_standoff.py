import pytest

from st2pathway.diagnostics import Code, Diagnostic
from st2pathway.standoff import (
    EventAnnotation,
    IgnoredLine,
    RoleBinding,
    TextBoundAnnotation,
    parse_document,
    parse_line,
    parse_role,
    read_document,
    to_standoff,
)

from .helpers import FIXTURES


def test_text_bound_with_tabs():
    assert parse_line("T1\tProtein 0 3\tYAP", 1) == TextBoundAnnotation("T1", "Protein", 0, 3, "YAP")


def test_text_bound_with_spaces_keeps_multiword_text():
    tb = parse_line("T5 Protein 10 24 insulin receptor", 1)
    assert tb.text == "insulin receptor"


def test_event_line():
    ev = parse_line("E2\tRegulation:T3 Theme:E1 Cause:T1", 7)
    assert ev == EventAnnotation(
        "E2", "Regulation", "T3", (RoleBinding("Theme", 1, "E1"), RoleBinding("Cause", 1, "T1"))
    )
    assert ev.targets("Theme") == ["E1"]
    assert ev.to_standoff() == "E2\tRegulation:T3 Theme:E1 Cause:T1"


def test_numbered_roles_and_case():
    ev = parse_line("E4\tBinding:T9 theme:T1 Theme2:T2", 1)
    assert [(b.role, b.index, b.label) for b in ev.roles] == [("Theme", 1, "Theme"), ("Theme", 2, "Theme2")]


@pytest.mark.parametrize(
    "name,expected",
    [("Theme", ("Theme", 1)), ("Theme3", ("Theme", 3)), ("atloc", ("AtLoc", 1)), ("Theme0", None), ("Agent", None)],
)
def test_parse_role(name, expected):
    assert parse_role(name) == expected


@pytest.mark.parametrize(
    "line,kind",
    [("", "blank"), ("   ", "blank"), ("M1\tNegation E1", "modifier"), ("A1\tSpeculation E2", "attribute"),
     ("N1\tReference T1 UniProt:P31749", "normalization"), ("*\tEquiv T1 T2", "equivalence"), ("#1\tnote", "comment")],
)
def test_ignored_lines(line, kind):
    item = parse_line(line, 3)
    assert isinstance(item, IgnoredLine) and item.kind == kind


@pytest.mark.parametrize(
    "line,code",
    [
        ("T1\tProtein 5 3\tYAP", Code.MALFORMED_LINE),
        ("T1\tProtein a b\tYAP", Code.MALFORMED_LINE),
        ("T1\tProtein 0 3", Code.MALFORMED_LINE),
        ("Tx\tProtein 0 3\tYAP", Code.MALFORMED_LINE),
        ("E1\tPhosphorylation T4", Code.MALFORMED_LINE),
        ("E1\tPhosphorylation:T4 Agent:T2", Code.MALFORMED_LINE),
        ("E1\tPhosphorylation:T4 Theme:X2", Code.MALFORMED_LINE),
        ("R1\tPart-of Arg1:T1 Arg2:T2", Code.UNRECOGNIZED_LINE),
    ],
)
def test_bad_lines_become_diagnostics(line, code):
    item = parse_line(line, 9)
    assert isinstance(item, Diagnostic)
    assert item.code is code and item.line == 9


def test_duplicate_ids_keep_first():
    doc = parse_document("d", [("d.ann", "T1\tProtein 0 3\tYAP\nT1\tProtein 4 8\tAkt1\n")])
    assert doc.triggers["T1"].text == "YAP"
    (diag,) = doc.diagnostics
    assert diag.code is Code.DUPLICATE_ID and "d.ann:1" in diag.message and diag.line == 2


def test_dangling_references_are_warned():
    doc = parse_document("d", [("d.ann", "T1\tProtein 0 3\tYAP\nE1\tPhosphorylation:T9 Theme:T1 Cause:E7\n")])
    codes = [d.code for d in doc.diagnostics]
    assert codes == [Code.DANGLING_REFERENCE, Code.DANGLING_REFERENCE]
    assert "E1" in doc.events


def test_a1_a2_pair_merges_with_locations(tmp_path):
    (tmp_path / "x.a1").write_text("T1\tProtein 0 3\tYAP\n")
    (tmp_path / "x.a2").write_text("T2\tPhosphorylation 4 8\tphos\nE1\tPhosphorylation:T2 Theme:T1\n")
    doc = read_document(tmp_path / "x.a1", tmp_path / "x.a2")
    assert doc.doc_id == "x"
    assert doc.location("T1") == ("x.a1", 1)
    assert doc.location("E1") == ("x.a2", 2)


def test_example1_parses_cleanly():
    doc = read_document(FIXTURES / "example1.ann")
    assert set(doc.triggers) == {"T1", "T2", "T3", "T4"}
    assert set(doc.events) == {"E1", "E2"}
    assert doc.diagnostics == []


def test_to_standoff_natural_order():
    doc = parse_document("d", [("d", "T10\tProtein 0 1\ta\nT2\tProtein 2 3\tb\n")])
    assert to_standoff(doc).splitlines() == ["T2\tProtein 2 3\tb", "T10\tProtein 0 1\ta"]


def test_missing_file_raises():
    with pytest.raises(OSError):
        read_document(FIXTURES / "nope.ann")
