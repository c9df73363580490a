"""Bipartite multigraphs and the structural surgeries on them.

Graphs are immutable: every operation returns a new :class:`BipartiteGraph`.
Vertex ids and edge ids are ints.  Edge ids survive every operation that
does not destroy the edge itself (deletion of other edges, contraction,
bicontraction, retract, bi-splitting), so an edge of a retract can always be
traced back to the edge of the original graph with the same id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "BipartiteGraph",
    "GraphError",
    "GraphFormatError",
    "Shore",
    "build",
    "make_shore",
    "delete_edge",
    "delete_edges",
    "add_edge",
    "contract_shore",
    "bicontract",
    "retract",
    "bi_split",
    "underlying_simple",
    "parse_graph",
    "format_graph",
    "read_graph",
]


class GraphError(ValueError):
    """Raised when an operation's precondition on a graph is violated."""


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BipartiteGraph:
    """Loop-free bipartite multigraph with stable vertex and edge ids.

    ``class_a`` and ``class_b`` are ordered tuples of vertex ids; ``edges``
    maps each edge id to its ``(a, b)`` endpoints with ``a`` in class A.
    """

    __slots__ = ("class_a", "class_b", "edges", "_side", "_inc")

    def __init__(self, class_a: Iterable[int], class_b: Iterable[int], edges: Mapping[int, tuple[int, int]]):
        self.class_a = tuple(class_a)
        self.class_b = tuple(class_b)
        side = {v: 0 for v in self.class_a}
        for v in self.class_b:
            if v in side:
                raise GraphError(f"vertex {v} appears in both classes")
            side[v] = 1
        if len(side) != len(self.class_a) + len(self.class_b):
            raise GraphError("duplicate vertex id")
        inc: dict[int, list[int]] = {v: [] for v in side}
        clean = {}
        for eid in sorted(edges):
            a, b = edges[eid]
            if side.get(a) != 0 or side.get(b) != 1:
                raise GraphError(f"edge {eid}={a, b} does not join class A to class B")
            clean[eid] = (a, b)
            inc[a].append(eid)
            inc[b].append(eid)
        self.edges: dict[int, tuple[int, int]] = clean
        self._side = side
        self._inc = {v: tuple(es) for v, es in inc.items()}

    # -- basic queries -----------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.class_a + self.class_b

    @property
    def order(self) -> int:
        return len(self.class_a) + len(self.class_b)

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def n(self) -> int:
        """Half the order."""
        return self.order // 2

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._side

    def side(self, v: int) -> int:
        """0 for class A, 1 for class B."""
        try:
            return self._side[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def endpoints(self, e: int) -> tuple[int, int]:
        try:
            return self.edges[e]
        except KeyError:
            raise GraphError(f"unknown edge id {e}") from None

    def incident(self, v: int) -> tuple[int, ...]:
        try:
            return self._inc[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def other_end(self, e: int, v: int) -> int:
        a, b = self.endpoints(e)
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an end of edge {e}")

    def neighbors(self, v: int) -> set[int]:
        return {self.other_end(e, v) for e in self.incident(v)}

    def multiplicity(self, a: int, b: int) -> int:
        return sum(1 for e in self.incident(a) if self.other_end(e, a) == b)

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e in self.incident(u) if self.other_end(e, u) == v]

    def is_simple(self) -> bool:
        return len(set(self.edges.values())) == len(self.edges)

    def is_connected(self) -> bool:
        if not self._side:
            return False
        start = next(iter(self._side))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self._side)

    def cubic_vertices(self) -> list[int]:
        return [v for v in self.vertices if self.degree(v) == 3]

    def noncubic_vertices(self) -> list[int]:
        return [v for v in self.vertices if self.degree(v) >= 4]

    def next_vertex_id(self) -> int:
        return max(self._side, default=-1) + 1

    def next_edge_id(self) -> int:
        return max(self.edges, default=-1) + 1

    def relabel(self, mapping: Mapping[int, int]) -> "BipartiteGraph":
        """Rename vertices; vertices missing from ``mapping`` keep their id."""
        f = lambda v: mapping.get(v, v)  # noqa: E731
        return BipartiteGraph(
            [f(v) for v in self.class_a],
            [f(v) for v in self.class_b],
            {e: (f(a), f(b)) for e, (a, b) in self.edges.items()},
        )

    def swap_classes(self) -> "BipartiteGraph":
        return BipartiteGraph(self.class_b, self.class_a, {e: (b, a) for e, (a, b) in self.edges.items()})

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.class_a, self.class_b, self.edges) == (other.class_a, other.class_b, other.edges)

    def __hash__(self):
        return hash((self.class_a, self.class_b, tuple(sorted(self.edges.items()))))

    def __repr__(self):
        return f"BipartiteGraph(|A|={len(self.class_a)}, |B|={len(self.class_b)}, m={self.size})"


@dataclass(frozen=True)
class Shore:
    """A vertex set X of a graph, split by colour class, with its complement."""

    vertices: frozenset
    in_a: frozenset
    in_b: frozenset
    comp_a: frozenset
    comp_b: frozenset

    @property
    def complement(self) -> frozenset:
        return self.comp_a | self.comp_b

    @property
    def is_odd(self) -> bool:
        return len(self.vertices) % 2 == 1

    def _need_odd(self):
        if not self.is_odd:
            raise GraphError("majority/minority parts are defined for odd shores only")

    @property
    def majority(self) -> frozenset:
        self._need_odd()
        return self.in_a if len(self.in_a) > len(self.in_b) else self.in_b

    @property
    def minority(self) -> frozenset:
        self._need_odd()
        return self.in_b if len(self.in_a) > len(self.in_b) else self.in_a

    @property
    def comp_majority(self) -> frozenset:
        self._need_odd()
        return self.comp_a if len(self.comp_a) > len(self.comp_b) else self.comp_b

    @property
    def comp_minority(self) -> frozenset:
        self._need_odd()
        return self.comp_b if len(self.comp_a) > len(self.comp_b) else self.comp_a

    @property
    def trivial(self) -> bool:
        return len(self.vertices) == 1 or len(self.comp_a) + len(self.comp_b) == 1

    def flip(self) -> "Shore":
        return Shore(self.complement, self.comp_a, self.comp_b, self.in_a, self.in_b)


def make_shore(G: BipartiteGraph, X: Iterable[int]) -> Shore:
    X = frozenset(X)
    if not X or len(X) >= G.order:
        raise GraphError("a shore must be a nonempty proper subset of V(G)")
    for v in X:
        if not G.has_vertex(v):
            raise GraphError(f"unknown vertex {v}")
    A, B = frozenset(G.class_a), frozenset(G.class_b)
    return Shore(X, X & A, X & B, A - X, B - X)


# -- construction -------------------------------------------------------------


def build(n_a: int, n_b: int, edge_list: Iterable[tuple[int, int]]) -> BipartiteGraph:
    """Graph with class A = ``0..n_a-1`` and class B = ``n_a..n_a+n_b-1``.

    ``edge_list`` holds class-local index pairs ``(a, b)``; edge ids follow
    input order.
    """
    edges = {}
    for eid, (a, b) in enumerate(edge_list):
        if not (0 <= a < n_a and 0 <= b < n_b):
            raise GraphError(f"edge {(a, b)} out of range for classes of size {n_a}, {n_b}")
        edges[eid] = (a, n_a + b)
    return BipartiteGraph(range(n_a), range(n_a, n_a + n_b), edges)


def delete_edge(G: BipartiteGraph, e: int) -> BipartiteGraph:
    G.endpoints(e)
    edges = dict(G.edges)
    del edges[e]
    return BipartiteGraph(G.class_a, G.class_b, edges)


def delete_edges(G: BipartiteGraph, es: Iterable[int]) -> BipartiteGraph:
    edges = dict(G.edges)
    for e in es:
        G.endpoints(e)
        edges.pop(e, None)
    return BipartiteGraph(G.class_a, G.class_b, edges)


def add_edge(G: BipartiteGraph, u: int, v: int) -> BipartiteGraph:
    """``G + uv`` with the fresh edge id ``G.next_edge_id()``."""
    su, sv = G.side(u), G.side(v)
    if su == sv:
        raise GraphError(f"vertices {u} and {v} lie in the same colour class")
    a, b = (u, v) if su == 0 else (v, u)
    edges = dict(G.edges)
    edges[G.next_edge_id()] = (a, b)
    return BipartiteGraph(G.class_a, G.class_b, edges)


def contract_shore(G: BipartiteGraph, X: Shore | Iterable[int]) -> BipartiteGraph:
    """``G/X``: the odd shore X shrinks to one vertex of its majority class.

    The contraction vertex reuses the smallest id of the majority part.
    Edges inside X disappear; the remaining edges keep their ids, so parallel
    edges may appear.
    """
    if not isinstance(X, Shore):
        X = make_shore(G, X)
    if not X.is_odd:
        raise GraphError("only odd shores can be contracted")
    major = X.majority
    x = min(major)
    inside = X.vertices
    f = lambda v: x if v in inside else v  # noqa: E731
    minor = X.minority
    edges = {}
    for e, (a, b) in G.edges.items():
        if a in inside and b in inside:
            continue
        if a in minor or b in minor:
            raise GraphError("contracting this shore would not leave a bipartite graph: "
                             "a minority vertex has a neighbour outside the shore")
        edges[e] = (f(a), f(b))
    if major <= set(G.class_a):
        ca = [v for v in G.class_a if v not in inside or v == x]
        cb = [v for v in G.class_b if v not in inside]
    else:
        ca = [v for v in G.class_a if v not in inside]
        cb = [v for v in G.class_b if v not in inside or v == x]
    return BipartiteGraph(ca, cb, edges)


def _bicontractible(G: BipartiteGraph, v: int) -> bool:
    return G.degree(v) == 2 and len(G.neighbors(v)) == 2


def bicontract(G: BipartiteGraph, v: int) -> BipartiteGraph:
    """Contract both edges at the degree-two vertex ``v``."""
    if G.degree(v) != 2:
        raise GraphError(f"vertex {v} has degree {G.degree(v)}, not 2")
    nbrs = G.neighbors(v)
    if len(nbrs) != 2:
        raise GraphError(f"vertex {v} has a single neighbour joined by two parallel edges")
    return contract_shore(G, {v, *nbrs})


def retract(G: BipartiteGraph) -> BipartiteGraph:
    """Bicontract degree-two vertices (smallest id first) until none is left."""
    while True:
        for v in sorted(G.vertices):
            if _bicontractible(G, v):
                G = bicontract(G, v)
                break
        else:
            return G


def bi_split(G: BipartiteGraph, v: int, part1: Iterable[int], part2: Iterable[int]) -> BipartiteGraph:
    """Replace ``v`` by ``v1 w0 v2``; ``v1`` keeps id ``v`` and ``part1``.

    The second half gets id ``G.next_vertex_id()`` and carries ``part2``; the
    new degree-two vertex ``w0`` gets the id after that.  The two new edges
    ``w0-v1`` and ``w0-v2`` get fresh ids in that order.
    """
    part1, part2 = frozenset(part1), frozenset(part2)
    inc = set(G.incident(v))
    if part1 & part2 or part1 | part2 != inc:
        raise GraphError(f"parts do not partition the edges at vertex {v}")
    if len(part1) < 2 or len(part2) < 2:
        raise GraphError("each part of a bi-split needs at least two edges")
    if G.degree(v) < 4:
        raise GraphError(f"vertex {v} is not noncubic")
    v2 = G.next_vertex_id()
    w0 = v2 + 1
    e1 = G.next_edge_id()
    edges = dict(G.edges)
    for e in part2:
        a, b = edges[e]
        edges[e] = (v2, b) if a == v else (a, v2)
    if G.side(v) == 0:
        ca = list(G.class_a)
        ca.insert(ca.index(v) + 1, v2)
        cb = list(G.class_b) + [w0]
        edges[e1] = (v, w0)
        edges[e1 + 1] = (v2, w0)
    else:
        cb = list(G.class_b)
        cb.insert(cb.index(v) + 1, v2)
        ca = list(G.class_a) + [w0]
        edges[e1] = (w0, v)
        edges[e1 + 1] = (w0, v2)
    return BipartiteGraph(ca, cb, edges)


def underlying_simple(G: BipartiteGraph) -> BipartiteGraph:
    """Drop all but the lowest-id edge of each parallel class."""
    seen = {}
    for e in sorted(G.edges):
        seen.setdefault(G.edges[e], e)
    return BipartiteGraph(G.class_a, G.class_b, {e: ab for ab, e in seen.items()})


def to_rows(G: BipartiteGraph) -> tuple[tuple[int, ...], int]:
    """Underlying simple graph as kernel rows (class-local positions)."""
    pos_b = {v: i for i, v in enumerate(G.class_b)}
    pos_a = {v: i for i, v in enumerate(G.class_a)}
    rows = [0] * len(G.class_a)
    for a, b in G.edges.values():
        rows[pos_a[a]] |= 1 << pos_b[b]
    return tuple(rows), len(G.class_b)


def from_rows(rows, nb: int) -> BipartiteGraph:
    pairs = [(i, j) for i, r in enumerate(rows) for j in range(nb) if r >> j & 1]
    return build(len(rows), nb, pairs)


# -- text format --------------------------------------------------------------


def parse_graph(text: str) -> BipartiteGraph:
    """Parse ``bipartite <nA> <nB>`` followed by ``a b`` lines."""
    header = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "bipartite":
                raise GraphFormatError("expected header 'bipartite <nA> <nB>'", lineno)
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise GraphFormatError("class sizes must be integers", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise GraphFormatError("class sizes must be nonnegative", lineno)
            continue
        if len(parts) != 2:
            raise GraphFormatError("expected an edge line 'a b'", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("edge endpoints must be integers", lineno) from None
        if not (0 <= a < header[0] and 0 <= b < header[1]):
            raise GraphFormatError(f"edge {a} {b} out of range", lineno)
        pairs.append((a, b))
    if header is None:
        raise GraphFormatError("empty input: missing 'bipartite' header")
    return build(header[0], header[1], pairs)


def format_graph(G: BipartiteGraph) -> str:
    """Serialize with class-local indices and sorted edge lines."""
    pos_a = {v: i for i, v in enumerate(G.class_a)}
    pos_b = {v: i for i, v in enumerate(G.class_b)}
    lines = [f"bipartite {len(G.class_a)} {len(G.class_b)}"]
    lines += [f"{a} {b}" for a, b in sorted((pos_a[a], pos_b[b]) for a, b in G.edges.values())]
    return "\n".join(lines) + "\n"


def read_graph(path) -> BipartiteGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
