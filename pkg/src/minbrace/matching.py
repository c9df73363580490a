"""Perfect matchings, matching covered graphs and braces."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from . import _bits
from .graph import BipartiteGraph, GraphError, delete_edge, to_rows

__all__ = [
    "maximum_matching",
    "has_perfect_matching",
    "perfect_matchings",
    "allowed_edges",
    "is_matching_covered",
    "is_matching_covered_by_deletion",
    "is_brace",
    "is_brace_by_surplus",
    "surplus",
]


def maximum_matching(G: BipartiteGraph) -> frozenset[int]:
    """A maximum matching as a set of edge ids (Kuhn's augmenting paths).

    Parallel edges are interchangeable; the lowest id of a class is used.
    """
    rows, nb = to_rows(G)
    _, match_col = _bits._max_matching(rows, (1 << len(rows)) - 1, (1 << nb) - 1)
    out = []
    for j, i in match_col.items():
        a, b = G.class_a[i], G.class_b[j]
        out.append(min(G.edges_between(a, b)))
    return frozenset(out)


def has_perfect_matching(G: BipartiteGraph) -> bool:
    if len(G.class_a) != len(G.class_b):
        return False
    return 2 * len(maximum_matching(G)) == G.order


def perfect_matchings(G: BipartiteGraph) -> Iterator[frozenset[int]]:
    """Every perfect matching, parallel edges counted as distinct."""
    if len(G.class_a) != len(G.class_b):
        return
    a_list = list(G.class_a)

    def rec(k, used, chosen):
        if k == len(a_list):
            yield frozenset(chosen)
            return
        a = a_list[k]
        for e in G.incident(a):
            b = G.other_end(e, a)
            if b not in used:
                used.add(b)
                chosen.append(e)
                yield from rec(k + 1, used, chosen)
                chosen.pop()
                used.discard(b)

    yield from rec(0, set(), [])


def allowed_edges(G: BipartiteGraph) -> set[int]:
    """Edges lying in some perfect matching (empty if there is none).

    With a perfect matching M, a non-matching edge ab is allowed iff an
    M-alternating path leads from b back to a.
    """
    M = maximum_matching(G)
    if 2 * len(M) != G.order:
        return set()
    mate = {}
    for e in M:
        a, b = G.edges[e]
        mate[a], mate[b] = b, a
    reach_cache: dict[int, set[int]] = {}

    def reach_from(b):
        # A-vertices reachable: b -> mate(b) -> (non-matching) b' -> mate(b') ...
        if b in reach_cache:
            return reach_cache[b]
        seen_a = set()
        stack = [mate[b]]
        while stack:
            a = stack.pop()
            if a in seen_a:
                continue
            seen_a.add(a)
            for e in G.incident(a):
                bb = G.other_end(e, a)
                if bb != mate[a]:
                    stack.append(mate[bb])
        reach_cache[b] = seen_a
        return seen_a

    allowed = set()
    for e, (a, b) in G.edges.items():
        if mate[a] == b or a in reach_from(b):
            allowed.add(e)
    return allowed


def is_matching_covered(G: BipartiteGraph) -> bool:
    if G.order == 0 or len(G.class_a) != len(G.class_b) or not G.is_connected():
        return False
    return len(allowed_edges(G)) == G.size


def is_matching_covered_by_deletion(G: BipartiteGraph) -> bool:
    """Oracle: connected, balanced, and G - a - b has a perfect matching for
    every a in A and b in B."""
    if G.order == 0 or len(G.class_a) != len(G.class_b) or not G.is_connected():
        return False
    rows, nb = to_rows(G)
    n = len(rows)
    full = (1 << n) - 1
    for i in range(n):
        for j in range(n):
            if not _bits.has_perfect_matching(rows, nb, full ^ (1 << i), full ^ (1 << j)):
                return False
    return True


def _small_brace(G: BipartiteGraph) -> bool:
    # order <= 4: K2 and C4 (up to multiplicities) are the only braces
    if G.order not in (2, 4) or len(G.class_a) != len(G.class_b):
        return False
    pairs = set(G.edges.values())
    if len(pairs) != len(G.class_a) ** 2:
        return False
    return is_matching_covered(G)


def is_brace(G: BipartiteGraph) -> bool:
    """Brace test: for order >= 6, matching covered and G - a1 - a2 - b1 - b2
    has a perfect matching for all distinct a1, a2 in A and b1, b2 in B."""
    if G.order < 6:
        return _small_brace(G)
    if len(G.class_a) != len(G.class_b) or not G.is_connected():
        return False
    if not is_matching_covered(G):
        return False
    rows, nb = to_rows(G)
    n = len(rows)
    full = (1 << n) - 1
    for a1, a2 in combinations(range(n), 2):
        rm = full ^ (1 << a1) ^ (1 << a2)
        for b1, b2 in combinations(range(n), 2):
            if not _bits.has_perfect_matching(rows, nb, rm, full ^ (1 << b1) ^ (1 << b2)):
                return False
    return True


def is_brace_by_surplus(G: BipartiteGraph) -> bool:
    """Cross-check: |N(Z)| >= |Z| + 2 for every nonempty Z within A with
    |Z| < |A| - 1 (order >= 6); small orders as in :func:`is_brace`."""
    if G.order < 6:
        return _small_brace(G)
    if len(G.class_a) != len(G.class_b) or not G.is_connected():
        return False
    A = list(G.class_a)
    for k in range(1, len(A) - 1):
        for Z in combinations(A, k):
            if surplus(G, Z) < 2:
                return False
    return True


def surplus(G: BipartiteGraph, Z: Iterable[int]) -> int:
    """|N(Z)| - |Z| for a nonempty set Z inside one colour class."""
    Z = set(Z)
    if not Z:
        raise GraphError("surplus needs a nonempty vertex set")
    sides = {G.side(v) for v in Z}
    if len(sides) != 1:
        raise GraphError("surplus needs Z inside a single colour class")
    nbhd = set()
    for v in Z:
        nbhd |= G.neighbors(v)
    return len(nbhd) - len(Z)


def is_removable(G: BipartiteGraph, e: int) -> bool:
    return is_matching_covered(delete_edge(G, e))
