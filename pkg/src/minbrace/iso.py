"""Canonical forms and isomorphism for small connected bipartite multigraphs.

Two connected bipartite graphs are isomorphic exactly when some bijection
maps colour classes to colour classes (possibly exchanging them) and
preserves edge multiplicities, so the canonical form is the least encoding
of the biadjacency matrix over row/column relabellings and the transpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from . import _bits
from .graph import BipartiteGraph, GraphError, to_rows

__all__ = ["CanonicalForm", "canonical_form", "are_isomorphic", "canonical_key"]


@total_ordering
@dataclass(frozen=True)
class CanonicalForm:
    data: bytes

    def hex(self) -> str:
        return self.data.hex()

    @classmethod
    def fromhex(cls, text: str) -> "CanonicalForm":
        return cls(bytes.fromhex(text))

    def __lt__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.data < other.data

    def __str__(self):
        return self.hex()


def key_to_form(key) -> CanonicalForm:
    """Encode a kernel canonical key ``(rows, cols, code)`` of a simple graph."""
    nr, nc, code = key
    return CanonicalForm(bytes([1, nr, nc]) + code.to_bytes((nr * nc + 7) // 8, "big"))


def canonical_key(G: BipartiteGraph):
    """Kernel key of the underlying simple graph (no connectivity check)."""
    rows, nb = to_rows(G)
    return _bits.canon(rows, nb)


# -- multigraphs ----------------------------------------------------------------


def _rank(keys):
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine_weighted(mat, rc, cc):
    nr, nc = len(mat), len(mat[0]) if mat else 0
    while True:
        before = (len(set(rc)), len(set(cc)))
        rc = _rank([(rc[i], tuple(sorted((cc[j], mat[i][j]) for j in range(nc) if mat[i][j]))) for i in range(nr)])
        cc = _rank([(cc[j], tuple(sorted((rc[i], mat[i][j]) for i in range(nr) if mat[i][j]))) for j in range(nc)])
        if (len(set(rc)), len(set(cc))) == before:
            return rc, cc


def _weighted_canon(mat):
    nr, nc = len(mat), len(mat[0])
    rc = _rank([tuple(sorted(row)) for row in mat])
    cc = _rank([tuple(sorted(mat[i][j] for i in range(nr))) for j in range(nc)])
    rc, cc = _refine_weighted(mat, rc, cc)
    best = [None]

    def search(rc, cc):
        sizes = {}
        for c in rc:
            sizes[c] = sizes.get(c, 0) + 1
        target = min((c for c, s in sizes.items() if s > 1), default=None)
        if target is None:
            order = sorted(range(nr), key=rc.__getitem__)
            corder = sorted(range(nc), key=lambda j: (cc[j], j))
            code = tuple(mat[i][j] for i in order for j in corder)
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        seen = set()
        for i in range(nr):
            if rc[i] != target or tuple(mat[i]) in seen:
                continue
            seen.add(tuple(mat[i]))
            rc2 = [c + 1 if c > target or (c == target and k != i) else c for k, c in enumerate(rc)]
            search(*_refine_weighted(mat, rc2, cc))

    search(rc, cc)
    return best[0]


def _multi_form(G: BipartiteGraph) -> CanonicalForm:
    pos_a = {v: i for i, v in enumerate(G.class_a)}
    pos_b = {v: i for i, v in enumerate(G.class_b)}
    mat = [[0] * len(G.class_b) for _ in G.class_a]
    for a, b in G.edges.values():
        mat[pos_a[a]][pos_b[b]] += 1
    if max(max(row) for row in mat) > 255:
        raise GraphError("edge multiplicity above 255 cannot be encoded")
    tmat = [list(col) for col in zip(*mat)]
    candidates = []
    if len(mat) <= len(tmat):
        candidates.append((len(mat), len(tmat), _weighted_canon(mat)))
    if len(tmat) <= len(mat):
        candidates.append((len(tmat), len(mat), _weighted_canon(tmat)))
    nr, nc, code = min(candidates)
    return CanonicalForm(bytes([2, nr, nc]) + bytes(code))


# -- public API ----------------------------------------------------------------


def canonical_form(G: BipartiteGraph) -> CanonicalForm:
    """Canonical encoding of a connected bipartite multigraph.

    Equal forms mean isomorphic graphs; exchanging the colour classes leaves
    the form unchanged.  The single-vertex graph is accepted.
    """
    if not G.is_connected():
        raise GraphError("canonical_form needs a connected graph")
    if G.is_simple():
        return key_to_form(canonical_key(G))
    return _multi_form(G)


def are_isomorphic(G: BipartiteGraph, H: BipartiteGraph) -> bool:
    if G.order != H.order or G.size != H.size:
        return False
    return canonical_form(G) == canonical_form(H)
