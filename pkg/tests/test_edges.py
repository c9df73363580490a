import pytest

from minbrace import GraphError, _bits, are_isomorphic, canonical_form, make
from minbrace.edges import (
    classify_edges,
    edge_index,
    is_minimal_brace,
    is_strictly_thin,
    is_superfluous,
    is_thin,
    non_superfluous_certificate,
)
from minbrace.families import q10plus_marked, q_graph
from minbrace.graph import delete_edge, retract, to_rows


def noncubic_edges(G):
    return [e for e, (a, b) in G.edges.items() if G.degree(a) > 3 and G.degree(b) > 3]


def check_certificate(G, e, cert):
    A1, A2, B1, B2 = cert
    assert A1 | A2 == set(G.class_a) and not A1 & A2
    assert B1 | B2 == set(G.class_b) and not B1 & B2
    assert len(B1) == len(A1) + 1
    crossing = [f for f, (a, b) in G.edges.items() if a in A1 and b in B2]
    assert crossing == [e]


@pytest.mark.parametrize("name", ["K33", "B8"])
def test_every_edge_thin(name):
    G = make(name)
    assert all(is_thin(G, e) for e in G.edges)


MCCUAIG_UP_TO_12 = [("moebius", 6), ("biwheel", 8), ("prism", 8), ("moebius", 10), ("biwheel", 10),
                    ("biwheel", 12), ("prism", 12)]


@pytest.mark.parametrize("name, order", MCCUAIG_UP_TO_12)
def test_mccuaig_braces_have_no_strictly_thin_edge(name, order):
    G = make(name, order)
    assert not any(is_strictly_thin(G, e) for e in G.edges)


def test_q10plus_marked_edge():
    G, e, f = q10plus_marked()
    assert is_strictly_thin(G, e)
    assert edge_index(G, e) == 1
    assert are_isomorphic(retract(delete_edge(G, e)), make("B8plus"))


def test_b8plus_unique_superfluous_edge():
    G = make("B8plus")
    sup = [e for e in G.edges if is_superfluous(G, e)]
    assert len(sup) == 1
    assert sup == noncubic_edges(G)
    assert are_isomorphic(delete_edge(G, sup[0]), make("B8"))
    assert non_superfluous_certificate(G, sup[0]) is None


def test_q10plus_has_no_superfluous_edge():
    G = make("Q10plus")
    assert not any(is_superfluous(G, e) for e in G.edges)
    (e,) = noncubic_edges(G)
    assert are_isomorphic(delete_edge(G, e), make("Q10"))
    A1, A2, B1, B2 = cert = non_superfluous_certificate(G, e)
    check_certificate(G, e, cert)
    assert (len(A1), len(B1)) == (2, 3)


def test_k33_certificates():
    G = make("K33")
    for e in G.edges:
        cert = non_superfluous_certificate(G, e)
        check_certificate(G, e, cert)
        assert len(cert[0]) == 1


def test_certificates_on_corpus(corpus10):
    for order in (6, 8, 10):
        for G in corpus10.by_order[order].values():
            for e in G.edges:
                cert = non_superfluous_certificate(G, e)
                assert (cert is None) == is_superfluous(G, e)
                if cert is not None:
                    check_certificate(G, e, cert)


def test_thin_needs_brace():
    with pytest.raises(GraphError):
        is_thin(make("Q10"), 0)
    with pytest.raises(GraphError):
        is_thin(make("C4"), 0)


def test_minimal_braces_up_to_eight(corpus10):
    found = set()
    for order in (2, 4, 6, 8):
        found |= {f for f, G in corpus10.by_order[order].items() if is_minimal_brace(G)}
    expected = {canonical_form(make(n)) for n in ("K2", "C4", "K33", "B8")}
    assert found == expected


def test_minimality_examples():
    assert not is_minimal_brace(make("B8plus"))
    assert is_minimal_brace(make("Q10plus"))
    assert is_minimal_brace(q_graph(12))
    assert not is_minimal_brace(make("Q10"))


def test_classification_consistent(corpus10):
    for order in (6, 8, 10):
        for G in corpus10.by_order[order].values():
            for c in classify_edges(G):
                assert c.removable
                assert c.thin == is_thin(G, c.edge)
                assert c.strictly_thin == is_strictly_thin(G, c.edge)
                assert c.superfluous == is_superfluous(G, c.edge)
                assert c.index == edge_index(G, c.edge)
                if c.superfluous:
                    assert c.strictly_thin and c.index == 0
                if c.strictly_thin:
                    assert c.thin


def test_kernel_scan_matches_classification(corpus10):
    for order in (6, 8, 10):
        for G in corpus10.by_order[order].values():
            cls = classify_edges(G)
            rows, nb = to_rows(G)
            strict, thin = _bits.thin_scan(rows, nb, exhaustive=True)
            assert strict == sum(c.strictly_thin for c in cls)
            assert thin == sum(c.thin for c in cls)
            assert thin >= 2


def test_record_shape():
    rec = classify_edges(make("K33"))[0].as_record()
    assert set(rec) == {"edge", "ends", "removable", "thin", "strictly_thin", "index", "superfluous"}
    assert rec["strictly_thin"] is False and rec["thin"] is True
