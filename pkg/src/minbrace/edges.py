"""Edge classification in braces: removable, thin, strictly thin, superfluous."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .cuts import _surplus_one_sets
from .graph import BipartiteGraph, GraphError, delete_edge, retract
from .matching import is_brace, is_matching_covered, is_removable

__all__ = [
    "EdgeClassification",
    "is_removable",
    "is_thin",
    "is_strictly_thin",
    "edge_index",
    "is_superfluous",
    "non_superfluous_certificate",
    "is_minimal_brace",
    "classify_edges",
]


def _need_brace(G: BipartiteGraph):
    if G.order < 6 or not is_brace(G):
        raise GraphError("this test needs a brace of order >= 6")


def is_thin(G: BipartiteGraph, e: int) -> bool:
    _need_brace(G)
    G.endpoints(e)
    return is_brace(retract(delete_edge(G, e)))


def is_strictly_thin(G: BipartiteGraph, e: int) -> bool:
    if not G.is_simple():
        raise GraphError("strict thinness is defined in simple braces")
    _need_brace(G)
    G.endpoints(e)
    H = retract(delete_edge(G, e))
    return H.is_simple() and is_brace(H)


def edge_index(G: BipartiteGraph, e: int) -> int:
    """Number of cubic ends of e."""
    return sum(G.degree(v) == 3 for v in G.endpoints(e))


def is_superfluous(G: BipartiteGraph, e: int) -> bool:
    G.endpoints(e)
    return is_brace(delete_edge(G, e))


def non_superfluous_certificate(G: BipartiteGraph, e: int):
    """Partitions ``(A1, A2, B1, B2)`` with ``|B1| = |A1| + 1`` and e the only
    edge from A1 to B2, or None when e is superfluous.

    They are read off the nontrivial tight cuts of ``G - e``; among those the
    one with the smallest ``A1`` is returned.
    """
    _need_brace(G)
    D = delete_edge(G, e)
    if not is_matching_covered(D):
        raise GraphError(f"edge {e} is not removable")
    A, B = frozenset(G.class_a), frozenset(G.class_b)
    best = None
    for cls in (G.class_a, G.class_b):
        for Z, nbhd in _surplus_one_sets(D, cls, None):
            if cls is G.class_a:
                A1, B1 = frozenset(Z), frozenset(nbhd)
            else:
                # Z inside B: the complementary sides carry the partition
                A1, B1 = A - nbhd, B - frozenset(Z)
            if best is None or len(A1) < len(best[0]):
                best = (A1, B1)
    if best is None:
        return None
    A1, B1 = best
    return A1, A - A1, B1, B - B1


def is_minimal_brace(G: BipartiteGraph) -> bool:
    """A brace none of whose edges is superfluous.

    Parallel edges are always superfluous, so only simple graphs qualify;
    for order >= 6 only edges joining two noncubic vertices are tested.
    """
    if not is_brace(G) or not G.is_simple():
        return False
    if G.order <= 4:
        return True
    for e, (a, b) in G.edges.items():
        if G.degree(a) > 3 and G.degree(b) > 3 and is_brace(delete_edge(G, e)):
            return False
    return True


@dataclass(frozen=True)
class EdgeClassification:
    edge: int
    ends: tuple[int, int]
    removable: bool
    thin: bool
    strictly_thin: bool
    index: int
    superfluous: bool

    def as_record(self) -> dict:
        d = asdict(self)
        d["ends"] = list(self.ends)
        return d


def classify_edges(G: BipartiteGraph) -> list[EdgeClassification]:
    """Per-edge flags for a brace of order >= 6, in edge-id order."""
    _need_brace(G)
    simple = G.is_simple()
    out = []
    for e in sorted(G.edges):
        D = delete_edge(G, e)
        removable = is_matching_covered(D)
        H = retract(D) if removable else None
        thin = removable and is_brace(H)
        out.append(EdgeClassification(
            edge=e,
            ends=G.endpoints(e),
            removable=removable,
            thin=thin,
            strictly_thin=simple and thin and H.is_simple(),
            index=edge_index(G, e),
            superfluous=removable and is_brace(D),
        ))
    return out
