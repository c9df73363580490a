"""Expansions of simple braces and minimality-preserving pairs.

Edge ids survive deletion and retraction, so an edge of ``retract(G - e)``
carries the id of the edge of G it came from; the set F of a certificate is
therefore given directly as edge ids of G.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from . import _bits
from .graph import (
    BipartiteGraph,
    GraphError,
    add_edge,
    bi_split,
    delete_edge,
    delete_edges,
    from_rows,
    retract,
    to_rows,
)
from .iso import CanonicalForm, are_isomorphic, canonical_form, key_to_form
from .matching import is_brace

__all__ = [
    "expand_index_zero",
    "expand_index_one",
    "expand_index_two",
    "stable_extension",
    "stable_sets_2x2",
    "edge_splits",
    "all_expansions",
    "MppCertificate",
    "NarrowVerdict",
    "find_mpp",
    "verify_narrow",
    "outer_vertices",
]


# -- expansions ------------------------------------------------------------------


def _require_simple(G, what):
    if not G.is_simple():
        raise GraphError(f"{what} would not be simple")


def expand_index_zero(H: BipartiteGraph, a: int, b: int) -> BipartiteGraph:
    """``H + ab`` for nonadjacent a, b in opposite classes."""
    if H.side(a) == H.side(b):
        raise GraphError(f"vertices {a} and {b} lie in the same colour class")
    if H.multiplicity(a, b):
        raise GraphError(f"vertices {a} and {b} are already adjacent")
    return add_edge(H, a, b)


def expand_index_one(H: BipartiteGraph, a: int, w: int, split: tuple[Iterable[int], Iterable[int]]) -> BipartiteGraph:
    """Bi-split ``a`` into ``a1 b0 a2`` and join ``b0`` to ``w``.

    ``a1`` keeps id ``a``; ``a2`` and ``b0`` are the two new vertex ids in
    that order, and the connecting edge ``b0 w`` has the largest edge id.
    """
    if H.side(a) != H.side(w):
        raise GraphError(f"vertices {a} and {w} must lie in the same colour class")
    if a == w:
        raise GraphError("the connecting edge must leave the split vertex")
    part1, part2 = split
    G = bi_split(H, a, part1, part2)
    b0 = G.next_vertex_id() - 1
    G = add_edge(G, b0, w)
    _require_simple(G, "this expansion")
    return G


def expand_index_two(H: BipartiteGraph, a: int, b: int, split_a, split_b) -> BipartiteGraph:
    """Bi-split ``a`` into ``a1 b0 a2`` and ``b`` into ``b1 a0 b2``, then join
    ``a0 b0``.

    When ``ab`` is an edge its id appears in both splits.  New vertex ids are
    ``a2, b0`` then ``b2, a0``; the connecting edge has the largest edge id.
    """
    if H.side(a) == H.side(b):
        raise GraphError(f"vertices {a} and {b} lie in the same colour class")
    if H.degree(b) < 4:
        raise GraphError(f"vertex {b} is not noncubic")
    G = bi_split(H, a, *split_a)
    b0 = G.next_vertex_id() - 1
    G = bi_split(G, b, *split_b)
    a0 = G.next_vertex_id() - 1
    G = add_edge(G, a0, b0)
    _require_simple(G, "this expansion")
    return G


def stable_sets_2x2(J: BipartiteGraph) -> list[frozenset]:
    """Stable sets of J with exactly two vertices in each colour class."""
    out = []
    for a1, a2 in combinations(J.class_a, 2):
        blocked = J.neighbors(a1) | J.neighbors(a2)
        free = [b for b in J.class_b if b not in blocked]
        for b1, b2 in combinations(free, 2):
            out.append(frozenset({a1, a2, b1, b2}))
    return out


def stable_extension(J: BipartiteGraph, S: Iterable[int]) -> BipartiteGraph:
    """Add ``a0`` (class A) and ``b0`` (class B) with edges ``a0b1, a0b2,
    b0a1, b0a2, a0b0``.

    ``a0`` and ``b0`` get the two next vertex ids in that order; the five
    edges get fresh ids in the order listed.
    """
    S = frozenset(S)
    sa = sorted(v for v in S if J.has_vertex(v) and J.side(v) == 0)
    sb = sorted(v for v in S if J.has_vertex(v) and J.side(v) == 1)
    if len(S) != 4 or len(sa) != 2 or len(sb) != 2:
        raise GraphError("S must have exactly two vertices in each colour class")
    for a in sa:
        if J.neighbors(a) & set(sb):
            raise GraphError("S is not a stable set")
    a0 = J.next_vertex_id()
    b0 = a0 + 1
    e = J.next_edge_id()
    edges = dict(J.edges)
    for k, pair in enumerate([(a0, sb[0]), (a0, sb[1]), (sa[0], b0), (sa[1], b0), (a0, b0)]):
        edges[e + k] = pair
    return BipartiteGraph(list(J.class_a) + [a0], list(J.class_b) + [b0], edges)


def edge_splits(G: BipartiteGraph, v: int) -> list[tuple[frozenset, frozenset]]:
    """Unordered 2-partitions of the edges at v with both parts of size >= 2;
    the lowest edge id always lies in the first part."""
    inc = sorted(G.incident(v))
    if len(inc) < 4:
        return []
    first, rest = inc[0], inc[1:]
    out = []
    for k in range(1, len(rest)):
        for combo in combinations(rest, k):
            p1 = frozenset((first, *combo))
            p2 = frozenset(inc) - p1
            if len(p2) >= 2:
                out.append((p1, p2))
    return out


def _kernel_children(rows, nb):
    yield from (("index-0", ch, n) for _, ch, n in _bits.index_zero_children(rows, nb))
    for orient in (rows, _bits.transpose(rows, nb)):
        yield from (("index-1", ch, n) for _, ch, n in _bits.index_one_children(orient, len(orient)))
    yield from (("index-2", ch, n) for _, ch, n in _bits.index_two_children(rows, nb))


def all_expansions(H: BipartiteGraph) -> dict[CanonicalForm, BipartiteGraph]:
    """Every graph obtained from the simple brace H by one expansion of index
    zero, one or two, keyed by canonical form."""
    if not H.is_simple():
        raise GraphError("expansions are defined for simple braces")
    rows, nb = to_rows(H)
    out: dict = {}
    for _, ch, n in _kernel_children(rows, nb):
        key = _bits.canon(ch, n)
        form = key_to_form(key)
        if form not in out:
            out[form] = from_rows(ch, n)
    return out


# -- minimality-preserving pairs ---------------------------------------------------


def outer_vertices(G: BipartiteGraph, e: int) -> dict[int, tuple[int, ...]]:
    """Inner vertices of ``G - e`` (degree two) mapped to their neighbours."""
    D = delete_edge(G, e)
    return {v: tuple(sorted(D.neighbors(v))) for v in G.endpoints(e) if D.degree(v) == 2}


def _touching(G, X):
    # edges with an end in X; the edge joining a witness pair counts, since
    # a superfluous edge of the retract may be exactly that edge
    return {f for f, (a, b) in G.edges.items() if a in X or b in X}


@dataclass(frozen=True)
class MppCertificate:
    e: int
    e_ends: tuple[int, int]
    index: int
    F: tuple[int, ...]
    F_ends: tuple[tuple[int, int], ...]
    J: BipartiteGraph
    witness: tuple = ()
    stable_ext: bool | None = None

    def as_record(self) -> dict:
        from .graph import format_graph

        return {
            "e": list(self.e_ends),
            "index": self.index,
            "F": [list(p) for p in self.F_ends],
            "witness": list(self.witness),
            "stable_ext": self.stable_ext,
            "J": format_graph(self.J),
        }


@dataclass(frozen=True)
class NarrowVerdict:
    ok: bool
    reason: str = "ok"
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _strictly_thin(G, e):
    H = retract(delete_edge(G, e))
    return H, is_brace(H) and H.is_simple()


def _is_minimal(H):
    from .edges import is_minimal_brace

    return is_minimal_brace(H)


def _reduce_to_minimal(H):
    """Delete superfluous edges, lowest id first, rescanning after each."""
    F = []
    while True:
        for f in sorted(H.edges):
            a, b = H.edges[f]
            if H.degree(a) > 3 and H.degree(b) > 3 and is_brace(delete_edge(H, f)):
                H = delete_edge(H, f)
                F.append(f)
                break
        else:
            return H, F


def _witness(G, e, index, F):
    """Locality witness for F, or None if F violates it."""
    if not F:
        return ()
    D = delete_edge(G, e)
    inner = outer_vertices(G, e)
    outers = sorted({v for ns in inner.values() for v in ns})
    Fs = set(F)
    if index == 1:
        for v in outers:
            if Fs <= set(D.incident(v)):
                return ("vertex", v)
        return None
    for u, w in combinations(outers, 2):
        if D.side(u) != D.side(w) and w in D.neighbors(u) and Fs <= _touching(D, {u, w}):
            return ("pair", u, w)
    return None


def _cubicity_ok(G, e, F):
    outers = {v for ns in outer_vertices(G, e).values() for v in ns}
    for f in F:
        for x in G.endpoints(f):
            if (G.degree(x) == 3) != (x in outers):
                return False
    return True


def _is_stable_extension_of(G, J):
    target = canonical_form(G)
    return any(canonical_form(stable_extension(J, S)) == target for S in stable_sets_2x2(J))


def _candidate_edges(G):
    """Edges with a cubic end, by index then id (index-0 edges cannot be
    strictly thin in a minimal brace)."""
    cand = []
    for f, (a, b) in G.edges.items():
        idx = (G.degree(a) == 3) + (G.degree(b) == 3)
        if idx:
            cand.append((idx, f))
    return sorted(cand)


def _certificate(G, e, idx, H):
    J, F = _reduce_to_minimal(H)
    w = _witness(G, e, idx, F)
    st = _is_stable_extension_of(G, J) if idx == 1 and len(F) == 2 else None
    return MppCertificate(
        e=e,
        e_ends=G.endpoints(e),
        index=idx,
        F=tuple(F),
        F_ends=tuple(G.endpoints(f) for f in F),
        J=J,
        witness=w if w is not None else (),
        stable_ext=st,
    )


def find_mpp(G: BipartiteGraph) -> MppCertificate:
    """A narrow minimality-preserving pair of a minimal brace outside the
    McCuaig family.

    Strictly thin edges are tried by index, then id; F deletes superfluous
    edges of ``retract(G - e)`` lowest id first.  The first certificate that
    passes :func:`verify_narrow` is returned.
    """
    from .families import is_mccuaig

    if is_mccuaig(G):
        raise GraphError("graph belongs to the McCuaig family")
    if not G.is_simple() or G.order < 6 or not _is_minimal(G):
        raise GraphError("find_mpp needs a simple minimal brace of order >= 6")
    for idx, e in _candidate_edges(G):
        H, ok = _strictly_thin(G, e)
        if not ok:
            continue
        cert = _certificate(G, e, idx, H)
        if verify_narrow(G, cert):
            return cert
    raise GraphError("no narrow minimality-preserving pair found")


def verify_narrow(G: BipartiteGraph, cert: MppCertificate) -> NarrowVerdict:
    """Check a certificate against the narrowness conditions."""
    e, idx, F = cert.e, cert.index, tuple(cert.F)
    if e not in G.edges:
        return NarrowVerdict(False, "unknown-edge")
    a, b = G.endpoints(e)
    true_idx = (G.degree(a) == 3) + (G.degree(b) == 3)
    if idx != true_idx or idx not in (1, 2):
        return NarrowVerdict(False, "bad-index", {"index": true_idx})
    H, ok = _strictly_thin(G, e)
    if not ok:
        return NarrowVerdict(False, "not-strictly-thin")
    if not set(F) <= set(H.edges) or len(set(F)) != len(F):
        return NarrowVerdict(False, "F-not-in-retract")
    J = delete_edges(H, F)
    if not _is_minimal(J):
        return NarrowVerdict(False, "J-not-minimal")
    if not are_isomorphic(J, cert.J):
        return NarrowVerdict(False, "J-mismatch")
    if len(F) > idx + 1:
        return NarrowVerdict(False, "F-too-large", {"size": len(F)})
    if F:
        w = _witness(G, e, idx, F)
        if w is None:
            return NarrowVerdict(False, "F-not-local")
        if cert.witness:
            D = delete_edge(G, e)
            outers = {v for ns in outer_vertices(G, e).values() for v in ns}
            wv = cert.witness[1:]
            if not set(wv) <= outers:
                return NarrowVerdict(False, "witness-not-outer")
            if cert.witness[0] == "vertex" and not set(F) <= set(D.incident(wv[0])):
                return NarrowVerdict(False, "witness-mismatch")
            if cert.witness[0] == "pair" and not (
                wv[1] in D.neighbors(wv[0]) and set(F) <= _touching(D, set(wv))
            ):
                return NarrowVerdict(False, "witness-mismatch")
        if not _cubicity_ok(G, e, F):
            return NarrowVerdict(False, "cubicity")
    if idx == 1 and len(F) == 2 and not _is_stable_extension_of(G, J):
        return NarrowVerdict(False, "not-stable-extension")
    return NarrowVerdict(True)
