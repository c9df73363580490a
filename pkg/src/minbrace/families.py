"""Named graphs and the McCuaig family.

Vertex ids follow :func:`minbrace.graph.build`: class A is ``0..nA-1`` and
class B follows.  Parameterized families take the order ``2n``:

* ``biwheel``: ``n >= 4``; a ``(2n-2)``-cycle plus two nonadjacent hubs, one
  per colour class, each joined to every cycle vertex of the other class.
* ``prism``: ``n`` even, ``n >= 4``; two ``n``-cycles joined by a perfect
  matching (``n`` must be even for the result to be bipartite).
* ``moebius``: ``n`` odd, ``n >= 3``; a ``2n``-cycle plus its ``n`` long
  diagonals (``n`` must be odd for the result to be bipartite).
* ``Q``: ``n >= 6``; ``Q12`` and then repeated stable-extensions at the
  noncubic vertices.
"""

from __future__ import annotations

from functools import lru_cache

from .graph import BipartiteGraph, GraphError, build
from .iso import canonical_form

__all__ = [
    "FAMILY_NAMES",
    "make",
    "biwheel",
    "prism",
    "moebius",
    "q_graph",
    "q10_tight_shore",
    "q10plus_marked",
    "b12_marked",
    "is_mccuaig",
    "mccuaig_forms",
]

FAMILY_NAMES = ("K2", "C4", "K33", "B8", "B8plus", "M10", "B10", "Q10", "Q10plus", "Q12", "B12",
                "biwheel", "prism", "moebius", "Q")


def _from_pairs(n, pairs):
    return build(n, n, sorted(pairs))


def biwheel(order: int) -> BipartiteGraph:
    """Rim vertices ``r_0 .. r_{2n-3}`` with ``r_i`` in A for odd i.

    Class A lists the odd rim vertices then hub ``a``; class B lists the even
    rim vertices then hub ``b``.  Hub ``a`` sees every even rim vertex.
    """
    if order % 2 or order < 8:
        raise GraphError("a biwheel needs even order 2n with n >= 4")
    n = order // 2
    k = n - 1                         # rim vertices per class
    pairs = []
    for i in range(k):                # A rim index i is r_{2i+1}; B rim index j is r_{2j}
        pairs.append((i, i))          # r_{2i+1} - r_{2i}
        pairs.append((i, (i + 1) % k))  # r_{2i+1} - r_{2i+2}
        pairs.append((k, i))          # hub a - even rim
        pairs.append((i, k))          # odd rim - hub b
    return _from_pairs(n, pairs)


def prism(order: int) -> BipartiteGraph:
    if order % 4 or order < 8:
        raise GraphError("a bipartite prism needs order 2n with n even and n >= 4")
    n = order // 2
    # outer u_i and inner v_i; A = {u_i : i even} + {v_i : i odd}
    a_list = [("u", i) for i in range(0, n, 2)] + [("v", i) for i in range(1, n, 2)]
    b_list = [("u", i) for i in range(1, n, 2)] + [("v", i) for i in range(0, n, 2)]
    bpos = {x: j for j, x in enumerate(b_list)}
    pairs = []
    for p, (t, i) in enumerate(a_list):
        other = "v" if t == "u" else "u"
        for x in ((t, (i + 1) % n), (t, (i - 1) % n), (other, i)):
            pairs.append((p, bpos[x]))
    return _from_pairs(n, pairs)


def moebius(order: int) -> BipartiteGraph:
    n = order // 2
    if order % 2 or n < 3 or n % 2 == 0:
        raise GraphError("a bipartite Moebius ladder needs order 2n with n odd and n >= 3")
    N = 2 * n
    pairs = []
    for v in range(0, N, 2):
        for u in ((v + 1) % N, (v - 1) % N, (v + n) % N):
            pairs.append((v // 2, u // 2))
    return _from_pairs(n, pairs)


# -- individual graphs ---------------------------------------------------------

# Q10 as two copies of K_{2,3} joined by a matching:
# A = a0 a1 | a2 a3 a4, B = b0 b1 b2 | b3 b4
_Q10_PAIRS = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2),
              (2, 3), (2, 4), (2, 0), (3, 3), (3, 4), (3, 1), (4, 3), (4, 4), (4, 2)]


def _q10() -> BipartiteGraph:
    return build(5, 5, _Q10_PAIRS)


def q10_tight_shore() -> frozenset:
    """A nontrivial tight shore of ``make('Q10')``: one ``K_{2,3}`` side."""
    return frozenset({0, 1, 5, 6, 7})


def q10plus_marked() -> tuple[BipartiteGraph, int, int]:
    """``(Q10+, e, f)``: ``e`` is strictly thin of index one and
    ``(e, {f})`` is a minimality-preserving pair.

    Drawn as a hexagon h0..h5 (h0, h2, h4 in B) plus vertices u, b0 in B and
    a1, a2 in A; ``e = b0 w`` with ``w = h5`` and ``f = a1 u``.
    """
    # A: a1=0 a2=1 h1=2 h3=3 h5=4(w);  B: h0=0 h2=1 h4=2 u=3 b0=4
    pairs = [
        (4, 4),  # e: w - b0
        (0, 3),  # f: a1 - u
        (0, 1), (0, 4),
        (1, 0), (1, 2), (1, 4),
        (2, 0), (2, 1), (2, 3),
        (3, 1), (3, 2), (3, 3),
        (4, 2), (4, 0), (4, 3),
    ]
    return build(5, 5, pairs), 0, 1


def _b8plus() -> BipartiteGraph:
    # cube plus one long diagonal: a = A0 and u = B3 are antipodal
    # A: a=0 h1=1 h3=2 h5=3;  B: h0=0 h2=1 h4=2 u=3
    pairs = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 3), (2, 1), (2, 2), (2, 3),
             (3, 2), (3, 0), (3, 3), (0, 3)]
    return build(4, 4, pairs)


def b12_marked() -> tuple[BipartiteGraph, frozenset, int]:
    """``(B12, S, f)`` with S a stable set meeting each class twice and f the
    edge from one S-vertex to the hub of the opposite class.

    Rim vertex ``r_i`` sits at angle ``36 i``; S = {r_1, r_9, r_4, r_6}.
    """
    G = biwheel(12)
    k = 5
    a1, a2 = 0, 4          # r_1, r_9 (A rim index i holds r_{2i+1})
    b1, b2 = 6 + 2, 6 + 3  # r_4, r_6 (B rim index j holds r_{2j})
    hub_b = 6 + k
    f = min(G.edges_between(a1, hub_b))
    return G, frozenset({a1, a2, b1, b2}), f


@lru_cache(maxsize=None)
def _q_cached(order: int) -> BipartiteGraph:
    from .expand import stable_extension, stable_sets_2x2

    if order == 12:
        Q10 = _q10()
        (S,) = stable_sets_2x2(Q10)  # Q10 has exactly one such set
        return stable_extension(Q10, S)
    prev = _q_cached(order - 2)
    return stable_extension(prev, frozenset(prev.noncubic_vertices()))


def q_graph(order: int) -> BipartiteGraph:
    if order % 2 or order < 12:
        raise GraphError("Q_{2n} needs n >= 6")
    return _q_cached(order)


_FIXED = {
    "K2": lambda: build(1, 1, [(0, 0)]),
    "C4": lambda: build(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]),
    "K33": lambda: build(3, 3, [(i, j) for i in range(3) for j in range(3)]),
    "B8": lambda: biwheel(8),
    "B8plus": _b8plus,
    "M10": lambda: moebius(10),
    "B10": lambda: biwheel(10),
    "Q10": _q10,
    "Q10plus": lambda: q10plus_marked()[0],
    "Q12": lambda: q_graph(12),
    "B12": lambda: biwheel(12),
}

_PARAM = {"biwheel": biwheel, "prism": prism, "moebius": moebius, "Q": q_graph}


def make(name: str, order: int | None = None) -> BipartiteGraph:
    """Construct a named graph; parameterized families need ``order``."""
    if name in _FIXED:
        G = _FIXED[name]()
        if order is not None and order != G.order:
            raise GraphError(f"{name} has order {G.order}, not {order}")
        return G
    if name in _PARAM:
        if order is None:
            raise GraphError(f"family {name} needs an order")
        return _PARAM[name](order)
    raise GraphError(f"unknown family {name!r}; choose from {', '.join(FAMILY_NAMES)}")


@lru_cache(maxsize=None)
def mccuaig_forms(order: int) -> frozenset:
    """Canonical forms of the members of the exceptional set of this order."""
    out = set()
    if order == 2:
        out.add(canonical_form(make("K2")))
    if order == 4:
        out.add(canonical_form(make("C4")))
    n = order // 2
    if order % 2 == 0 and n >= 4:
        out.add(canonical_form(biwheel(order)))
    if order % 4 == 0 and n >= 4:
        out.add(canonical_form(prism(order)))
    if order % 2 == 0 and n >= 3 and n % 2 == 1:
        out.add(canonical_form(moebius(order)))
    return frozenset(out)


def is_mccuaig(G: BipartiteGraph) -> bool:
    """Membership in the exceptional set: K2, C4, prisms, Moebius ladders and
    biwheels."""
    if not G.is_simple() or not G.is_connected():
        return False
    return canonical_form(G) in mccuaig_forms(G.order)
