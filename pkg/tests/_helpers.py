"""Helpers shared by the module tests and the acceptance suite."""
import itertools

from minbrace.expand import edge_splits, expand_index_one, expand_index_two, expand_index_zero
from minbrace.graph import bicontract


def odd_shores(G):
    V = sorted(G.vertices)
    first, rest = V[0], V[1:]
    # each cut counted once: shores containing the first vertex
    for k in range(0, len(V) - 1, 2):
        for combo in itertools.combinations(rest, k):
            yield (first, *combo)


def nonedges(G):
    return [(a, b) for a in G.class_a for b in G.class_b if not G.multiplicity(a, b)]


def expansions(H):
    """Every expansion of H as ``(index, G)``; the connecting edge of an
    index one or two expansion is the one with the largest id."""
    for a, b in nonedges(H):
        yield 0, expand_index_zero(H, a, b)
    noncubic = [v for v in H.vertices if H.degree(v) >= 4]
    for a in noncubic:
        same = [w for w in H.vertices if H.side(w) == H.side(a) and w != a]
        for split in edge_splits(H, a):
            for w in same:
                yield 1, expand_index_one(H, a, w, split)
    for a, b in itertools.product(noncubic, noncubic):
        if H.side(a) != 0 or H.side(b) != 1:
            continue
        for sa in edge_splits(H, a):
            for sb in edge_splits(H, b):
                yield 2, expand_index_two(H, a, b, sa, sb)


def connecting_edge(idx, G, H):
    return max(G.edges) if idx else next(f for f in G.edges if f not in H.edges)


def retract_in_order(G, rng):
    while True:
        cands = [v for v in G.vertices if G.degree(v) == 2 and len(G.neighbors(v)) == 2]
        if not cands:
            return G
        G = bicontract(G, rng.choice(cands))
