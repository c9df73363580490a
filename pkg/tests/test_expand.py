import dataclasses

import pytest

from minbrace import GraphError, are_isomorphic, canonical_form, make
from minbrace.edges import edge_index
from minbrace.expand import (
    all_expansions,
    edge_splits,
    expand_index_one,
    expand_index_two,
    expand_index_zero,
    find_mpp,
    stable_extension,
    stable_sets_2x2,
    verify_narrow,
)
from minbrace.families import biwheel, q10plus_marked
from minbrace.graph import delete_edge, delete_edges, retract
from minbrace.matching import is_brace

from _helpers import connecting_edge, expansions, nonedges


def test_b8_plus_any_edge_is_b8plus():
    B8 = make("B8")
    for a, b in nonedges(B8):
        G = expand_index_zero(B8, a, b)
        assert are_isomorphic(G, make("B8plus"))


def test_b10_plus_any_edge_is_brace():
    B10 = make("B10")
    for a, b in nonedges(B10):
        assert is_brace(expand_index_zero(B10, a, b))


def test_index_zero_rejects_bad_pairs():
    K33 = make("K33")
    with pytest.raises(GraphError):
        expand_index_zero(K33, 0, 3)
    with pytest.raises(GraphError):
        expand_index_zero(K33, 0, 1)


def test_b8plus_index_one_gives_q10plus():
    # vertex 0 is the split vertex a and vertex 3 is w (same class)
    B8p = make("B8plus")
    assert B8p.degree(0) == 4 and B8p.side(3) == 0
    G = expand_index_one(B8p, 0, 3, ({1, 12}, {0, 2}))
    assert are_isomorphic(G, make("Q10plus"))
    assert (G.order, G.size) == (B8p.order + 2, B8p.size + 3)


def test_index_one_rejects_bad_arguments():
    B10 = biwheel(10)
    hub = B10.class_a[-1]
    split = edge_splits(B10, hub)[0]
    with pytest.raises(GraphError):
        expand_index_one(B10, hub, hub, split)
    with pytest.raises(GraphError):
        expand_index_one(B10, hub, B10.class_b[0], split)


def test_index_two_sizes():
    B10 = biwheel(10)
    a, b = B10.class_a[-1], B10.class_b[-1]
    G = expand_index_two(B10, a, b, edge_splits(B10, a)[0], edge_splits(B10, b)[0])
    assert (G.order, G.size) == (B10.order + 4, B10.size + 5)
    assert is_brace(G)


def test_edge_splits_count():
    B12 = biwheel(12)
    hub = B12.class_a[-1]
    # 2/3 splits of five edges, unordered
    assert len(edge_splits(B12, hub)) == 10
    assert edge_splits(make("K33"), 0) == []


def test_round_trips_and_brace_property(corpus10):
    # parents up to order 10 are swept by the acceptance suite
    counts = {0: 0, 1: 0, 2: 0}
    for order in range(2, 9, 2):
        for H in corpus10.by_order[order].values():
            for idx, G in expansions(H):
                counts[idx] += 1
                assert G.order == H.order + 2 * idx
                assert G.size == H.size + 1 + 2 * idx
                assert is_brace(G)
                back = retract(delete_edge(G, connecting_edge(idx, G, H)))
                assert are_isomorphic(back, H)
    assert all(counts.values())


def test_kernel_expansions_match_object_level(corpus10):
    for order in (6, 8, 10):
        for H in list(corpus10.by_order[order].values())[:12]:
            mine = {canonical_form(G) for _, G in expansions(H)}
            assert mine == set(all_expansions(H))


def test_stable_extension_preserves_braces(corpus12):
    seen = 0
    for order in (10, 12):
        for J in corpus12.by_order[order].values():
            for S in stable_sets_2x2(J)[:2]:
                G = stable_extension(J, S)
                assert (G.order, G.size) == (J.order + 2, J.size + 5)
                assert G.is_simple() and is_brace(G)
                seen += 1
    assert seen > 0


def test_stable_extension_rejects_bad_sets():
    Q10 = make("Q10")
    (S,) = stable_sets_2x2(Q10)
    a = min(v for v in S if Q10.side(v) == 0)
    with pytest.raises(GraphError):
        stable_extension(Q10, S - {a})
    b = next(iter(Q10.neighbors(a)))
    bad = (S - {max(v for v in S if Q10.side(v) == 1)}) | {b}
    with pytest.raises(GraphError):
        stable_extension(Q10, bad)


def test_mpp_q10plus():
    G, e, f = q10plus_marked()
    cert = find_mpp(G)
    assert verify_narrow(G, cert)
    assert cert.index == edge_index(G, cert.e) == 1
    assert len(cert.F) == 1 and cert.witness[0] == "vertex"
    assert are_isomorphic(cert.J, make("B8"))
    assert are_isomorphic(delete_edges(retract(delete_edge(G, e)), [f]), make("B8"))


def test_mpp_q14_is_a_stable_extension():
    G = make("Q", 14)
    cert = find_mpp(G)
    assert cert.index == 1 and len(cert.F) == 2 and cert.stable_ext
    assert are_isomorphic(cert.J, make("Q12"))
    assert (cert.J.n, cert.J.m) == (G.n - 1, G.m - 5)


@pytest.mark.parametrize("name", ["B10", "M10", "B8plus", "Q10"])
def test_mpp_rejects(name):
    with pytest.raises(GraphError):
        find_mpp(make(name))


def tampered(cert, G, **changes):
    return verify_narrow(G, dataclasses.replace(cert, **changes))


def test_verify_narrow_rejects_tampering():
    G = make("Q12")
    cert = find_mpp(G)
    assert verify_narrow(G, cert)
    assert tampered(cert, G, e=10**6).reason == "unknown-edge"
    assert tampered(cert, G, index=2 if cert.index == 1 else 1).reason == "bad-index"
    other = next(make(n) for n in ("M10", "Q10plus") if not are_isomorphic(make(n), cert.J))
    assert tampered(cert, G, J=other).reason == "J-mismatch"
    assert tampered(cert, G, F=()).reason == "J-not-minimal"
    assert tampered(cert, G, F=(10**6,)).reason == "F-not-in-retract"
    bad_witness = ("vertex", cert.e_ends[0]) if cert.witness[0] == "vertex" else ("pair", *cert.e_ends)
    assert tampered(cert, G, witness=bad_witness).reason in ("witness-not-outer", "witness-mismatch")


def test_verify_narrow_rejects_non_thin_edge():
    G = make("Q10plus")
    cert = find_mpp(G)
    # no index-two edge of Q10+ is strictly thin
    e = next(e for e in G.edges if edge_index(G, e) == 2)
    assert tampered(cert, G, e=e, index=2).reason == "not-strictly-thin"


def test_cubic_order_twelve_witness_pairs(corpus12):
    # the two cubic minimal braces of order 12 outside the McCuaig family
    # need an F edge joining the two outer vertices of the witness pair
    from minbrace.families import is_mccuaig
    from minbrace.edges import is_minimal_brace

    seen = 0
    for G in corpus12.by_order[12].values():
        if G.m != 18 or is_mccuaig(G) or not is_minimal_brace(G):
            continue
        cert = find_mpp(G)
        assert verify_narrow(G, cert) and cert.index == 2
        assert cert.witness[0] == "pair"
        assert set(cert.witness[1:]) in [set(p) for p in cert.F_ends]
        seen += 1
    assert seen == 2
