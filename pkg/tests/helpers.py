from pathlib import Path

from st2pathway import build_graph, parse_document, read_document

FIXTURES = Path(__file__).parent / "fixtures"


def graph_of(name):
    return build_graph(read_document(FIXTURES / name))


def graph_from_text(text, doc_id="doc"):
    return build_graph(parse_document(doc_id, [(f"{doc_id}.ann", text)]))
