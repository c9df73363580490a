"""Tight cuts and the tight cut decomposition of bipartite matching covered graphs."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .graph import BipartiteGraph, GraphError, Shore, contract_shore, make_shore, underlying_simple
from .iso import canonical_form
from .matching import perfect_matchings

__all__ = [
    "DecompositionResult",
    "is_tight_cut",
    "is_tight_cut_by_matchings",
    "find_nontrivial_tight_cut",
    "tight_cut_decomposition",
]


def _as_shore(G: BipartiteGraph, X) -> Shore:
    return X if isinstance(X, Shore) else make_shore(G, X)


def is_tight_cut(G: BipartiteGraph, X: Shore | Iterable[int]) -> bool:
    """Structural test for a matching covered bipartite G.

    The cut is tight iff X is odd, its majority part exceeds its minority
    part by exactly one, and no edge joins the minority part of X to the
    minority part of the complement.
    """
    X = _as_shore(G, X)
    if not X.is_odd:
        return False
    if len(X.majority) != len(X.minority) + 1:
        return False
    minus, comp_minus = X.minority, X.comp_minority
    for v in minus:
        if G.neighbors(v) & comp_minus:
            return False
    return True


def is_tight_cut_by_matchings(G: BipartiteGraph, X: Shore | Iterable[int]) -> bool:
    """Definition: every perfect matching has exactly one edge in the cut."""
    X = _as_shore(G, X)
    inside = X.vertices
    cut = {e for e, (a, b) in G.edges.items() if (a in inside) != (b in inside)}
    return all(len(M & cut) == 1 for M in perfect_matchings(G))


def _surplus_one_sets(G, cls, rng):
    verts = list(cls)
    if rng is not None:
        rng.shuffle(verts)
    for k in range(1, len(verts) - 1):
        for Z in combinations(verts, k):
            nbhd = set()
            for v in Z:
                nbhd |= G.neighbors(v)
            if len(nbhd) <= k + 1:
                yield Z, nbhd


def find_nontrivial_tight_cut(G: BipartiteGraph, rng: random.Random | None = None) -> Shore | None:
    """A nontrivial tight cut of a matching covered G, or None if G is a brace.

    Subsets Z of class A are tried by size, then lexicographically, then
    subsets of class B; the first Z with ``|N(Z)| = |Z| + 1`` gives the shore
    ``Z | N(Z)``.  Passing ``rng`` shuffles the search order.
    """
    if G.order < 6:
        raise GraphError("tight cut search needs order >= 6")
    classes = [G.class_a, G.class_b]
    if rng is not None:
        rng.shuffle(classes)
    for cls in classes:
        for Z, nbhd in _surplus_one_sets(G, cls, rng):
            return make_shore(G, set(Z) | nbhd)
    return None


@dataclass
class DecompositionResult:
    leaves: list[BipartiteGraph]
    trace: list[frozenset] = field(default_factory=list)

    @property
    def leaf_forms(self) -> list[str]:
        """Sorted canonical forms (hex) of the leaves' underlying simple graphs."""
        return sorted(canonical_form(underlying_simple(L)).hex() for L in self.leaves)

    def leaf_multiset(self) -> Counter:
        return Counter(self.leaf_forms)


def tight_cut_decomposition(G: BipartiteGraph, rng: random.Random | None = None) -> DecompositionResult:
    """Split along nontrivial tight cuts until every piece is a brace.

    Leaves come out depth first, the ``G/X`` side (X shrunk) before ``G/X̄``.
    """
    result = DecompositionResult([])
    stack = [G]
    while stack:
        H = stack.pop()
        X = find_nontrivial_tight_cut(H, rng) if H.order >= 6 else None
        if X is None:
            result.leaves.append(H)
            continue
        result.trace.append(X.vertices)
        stack.append(contract_shore(H, X.flip()))
        stack.append(contract_shore(H, X))
    return result
