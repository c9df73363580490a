import itertools

import pytest
from hypothesis import given

from minbrace import GraphError, build, make
from minbrace.cuts import is_tight_cut_by_matchings
from minbrace.families import biwheel, q10_tight_shore
from minbrace.graph import to_rows
from minbrace.matching import (
    allowed_edges,
    has_perfect_matching,
    is_brace,
    is_brace_by_surplus,
    is_matching_covered,
    is_matching_covered_by_deletion,
    is_removable,
    maximum_matching,
    perfect_matchings,
    surplus,
)
from minbrace import _bits

from conftest import bipartite_graphs


def brute_matchings(G):
    """All perfect matchings as sets of edge ids, by trying every bijection."""
    if len(G.class_a) != len(G.class_b):
        return []
    out = []
    for perm in itertools.permutations(G.class_b):
        choices = [G.edges_between(a, b) for a, b in zip(G.class_a, perm)]
        if all(choices):
            out.extend(frozenset(c) for c in itertools.product(*choices))
    return out


def brute_max_matching_size(G):
    es = list(G.edges.items())
    for k in range(min(len(G.class_a), len(G.class_b)), 0, -1):
        for combo in itertools.combinations(es, k):
            ends = [v for _, ab in combo for v in ab]
            if len(set(ends)) == 2 * k:
                return k
    return 0


def brute_brace(G):
    if not is_matching_covered(G):
        return False
    V = list(G.vertices)
    for k in range(3, len(V) - 2, 2):
        for X in itertools.combinations(V, k):
            if is_tight_cut_by_matchings(G, X):
                return False
    return True


@given(bipartite_graphs(max_n=4, balanced=False))
def test_maximum_matching_size(G):
    M = maximum_matching(G)
    ends = [v for e in M for v in G.endpoints(e)]
    assert len(ends) == len(set(ends))
    assert len(M) == brute_max_matching_size(G)


@given(bipartite_graphs(max_n=4))
def test_perfect_matchings_enumeration(G):
    mine = sorted(sorted(M) for M in perfect_matchings(G))
    assert mine == sorted(sorted(M) for M in brute_matchings(G))
    assert has_perfect_matching(G) == bool(mine)


@given(bipartite_graphs(max_n=4, connected=True))
def test_allowed_edges_match_enumeration(G):
    covered = set().union(*brute_matchings(G)) if brute_matchings(G) else set()
    if has_perfect_matching(G):
        assert allowed_edges(G) == covered


@given(bipartite_graphs(max_n=4, connected=True))
def test_matching_covered_three_ways(G):
    pms = brute_matchings(G)
    definitional = G.order >= 2 and bool(pms) and set().union(*pms) == set(G.edges)
    assert is_matching_covered(G) == definitional
    assert is_matching_covered_by_deletion(G) == definitional


@given(bipartite_graphs(min_n=2, max_n=4, connected=True))
def test_brace_tests_agree(G):
    expected = brute_brace(G)
    assert is_brace(G) == expected
    if G.order >= 6 and G.is_simple():
        assert is_brace_by_surplus(G) == expected
        rows, nb = to_rows(G)
        assert _bits.is_brace_any(rows, nb) == expected


def test_brace_tests_agree_on_corpus(corpus10):
    for order in (6, 8, 10):
        for G in corpus10.by_order[order].values():
            assert is_brace(G) and is_brace_by_surplus(G)


@pytest.mark.parametrize("n", range(4, 9))
def test_biwheels_are_braces(n):
    G = biwheel(2 * n)
    assert is_matching_covered(G) and is_brace(G)


def test_q10_matching_covered_not_brace():
    Q10 = make("Q10")
    assert is_matching_covered(Q10)
    assert not is_brace(Q10) and not is_brace_by_surplus(Q10)


def test_b8_is_brace():
    assert is_brace(make("B8"))


def test_q10_surplus_of_shore_minority():
    Q10 = make("Q10")
    X = q10_tight_shore()
    minority = [v for v in X if Q10.side(v) == 0]
    assert len(minority) == 2
    assert surplus(Q10, minority) == 1


def test_surplus_rejects_bad_sets():
    G = make("K33")
    with pytest.raises(GraphError):
        surplus(G, [])
    with pytest.raises(GraphError):
        surplus(G, [0, 3])


@pytest.mark.parametrize("name", ["K33", "B10"])
def test_every_edge_removable_in_braces(name):
    G = make(name)
    assert all(is_removable(G, e) for e in G.edges)


def test_c6_edges_not_removable():
    C6 = build(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)])
    assert is_matching_covered(C6)
    assert not any(is_removable(C6, e) for e in C6.edges)
