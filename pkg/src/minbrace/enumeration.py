"""Exhaustive generation of simple braces and the checks run over them.

Graphs are stored as kernel keys ``(rows, cols, code)``; a key both names the
isomorphism class and rebuilds a representative through
:func:`minbrace._bits.from_code`.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from multiprocessing import Pool

import pynauty

from . import _bits
from .graph import BipartiteGraph, GraphError, from_rows
from .iso import CanonicalForm, canonical_form, key_to_form
from .matching import is_brace

__all__ = [
    "DEFAULT_GUARDRAIL",
    "MAX_ORDER",
    "Corpus",
    "generate_braces",
    "brute_force_graphs",
    "minimal_braces",
    "BoundReport",
    "verify_bound",
    "form_to_key",
    "CheckResult",
    "run_harness",
]

log = logging.getLogger(__name__)

DEFAULT_GUARDRAIL = 14
MAX_ORDER = 16


def form_to_key(form: CanonicalForm):
    data = form.data
    if data[0] != 1:
        raise GraphError("only simple graphs have kernel keys")
    return data[1], data[2], int.from_bytes(data[3:], "big")


def _graph(key) -> BipartiteGraph:
    rows, nb = _bits.from_code(key)
    return from_rows(rows, nb)


class _Layer(Mapping):
    """Read-only view ``CanonicalForm -> BipartiteGraph`` over a key set."""

    def __init__(self, keys):
        self._keys = keys

    def __getitem__(self, form):
        key = form_to_key(form)
        if key not in self._keys:
            raise KeyError(form)
        return _graph(key)

    def __iter__(self):
        return (key_to_form(k) for k in sorted(self._keys))

    def __len__(self):
        return len(self._keys)

    def __contains__(self, form):
        try:
            return form_to_key(form) in self._keys
        except GraphError:
            return False


@dataclass
class Corpus:
    """Simple braces by order, each with the step that first produced it.

    ``provenance`` maps a key to ``(parent_key, operation)``; seeds from the
    McCuaig family have ``parent_key = None``.
    """

    max_order: int = 0
    layers: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    @property
    def by_order(self) -> dict[int, _Layer]:
        return {o: _Layer(keys) for o, keys in sorted(self.layers.items())}

    def keys(self, order: int) -> list:
        return sorted(self.layers.get(order, ()))

    def __len__(self):
        return sum(len(v) for v in self.layers.values())

    def __contains__(self, G) -> bool:
        form = G if isinstance(G, CanonicalForm) else canonical_form(G)
        return any(form in layer for layer in self.by_order.values())

    def provenance_of(self, form: CanonicalForm):
        """``(parent_form or None, operation)``."""
        parent, op = self.provenance[form_to_key(form)]
        return (key_to_form(parent) if parent is not None else None), op


# -- generation --------------------------------------------------------------------


def _seed_rows(order):
    from .families import biwheel, make, moebius, prism

    out = []
    n = order // 2
    if order == 2:
        out.append(("K2", make("K2")))
    if order == 4:
        out.append(("C4", make("C4")))
    if n >= 3 and n % 2 == 1:
        out.append(("moebius", moebius(order)))
    if n >= 4:
        out.append(("biwheel", biwheel(order)))
    if n >= 4 and n % 2 == 0:
        out.append(("prism", prism(order)))
    from .graph import to_rows

    return [(name, to_rows(G)) for name, G in out]


def _children(kind, rows, nb):
    if kind == 0:
        yield from _bits.index_zero_children(rows, nb)
    elif kind == 1:
        for orient in (rows, _bits.transpose(rows, nb)):
            yield from _bits.index_one_children(orient, len(orient))
    else:
        yield from _bits.index_two_children(rows, nb)


_NAUTY_GRAPHS: dict = {}


def _certificate(rows, nb) -> bytes:
    """nauty certificate, invariant under exchanging the colour classes.

    Only used to deduplicate children while a layer is closed; the stored
    keys always come from :func:`minbrace._bits.canon`.
    """
    na = len(rows)
    total = na + nb
    g = _NAUTY_GRAPHS.get(total)
    if g is None:
        g = _NAUTY_GRAPHS[total] = pynauty.Graph(total)
    g.set_adjacency_dict({i: [na + j for j in _bits._bits_of(r)] for i, r in enumerate(rows)})
    A, B = set(range(na)), set(range(na, total))
    if na != nb:
        g.set_vertex_coloring([A, B] if na < nb else [B, A])
        return pynauty.certificate(g)
    g.set_vertex_coloring([A, B])
    c1 = pynauty.certificate(g)
    g.set_vertex_coloring([B, A])
    return min(c1, pynauty.certificate(g))


def _expand_certs(task):
    """Worker: ``(certificate, rows, nb)`` for every child of one parent."""
    kind, rows, nb = task
    return [(_certificate(ch, n), ch, n) for _, ch, n in _children(kind, rows, nb)]


_OPS = {0: "index-0", 1: "index-1", 2: "index-2"}


def _run(tasks, pool, worker, chunksize=64):
    if pool is None:
        return map(worker, tasks)
    return pool.imap(worker, tasks, chunksize=chunksize)


def _check_guardrail(max_order, override):
    if max_order % 2 or max_order < 2:
        raise GraphError("max_order must be a positive even number")
    if max_order > MAX_ORDER:
        raise GraphError(f"orders above {MAX_ORDER} are out of range")
    if max_order > DEFAULT_GUARDRAIL and not override:
        raise GraphError(f"max_order {max_order} exceeds the guardrail of {DEFAULT_GUARDRAIL}; "
                         "pass the override flag to proceed")


def generate_braces(max_order: int, *, override_guardrail: bool = False, workers: int = 1,
                    corpus: Corpus | None = None) -> Corpus:
    """All simple braces of order at most ``max_order`` up to isomorphism.

    Layer ``2k`` starts from the McCuaig members of that order and the
    index-one and index-two expansions of layers ``2k-2`` and ``2k-4``, and
    is then closed under edge addition.  An existing ``corpus`` is extended
    in place.
    """
    _check_guardrail(max_order, override_guardrail)
    corpus = corpus if corpus is not None else Corpus()
    pool = Pool(workers) if workers > 1 else None
    try:
        for order in range(2, max_order + 1, 2):
            if order in corpus.layers:
                continue
            _build_layer(corpus, order, pool)
            corpus.max_order = order
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return corpus


def _build_layer(corpus, order, pool):
    # found: certificate -> (rows, nb, parent, op); index-0 parents are
    # certificates of this layer, other parents are keys of lower layers
    found: dict = {}

    def add(cert, rows, nb, parent, op):
        if cert not in found:
            found[cert] = (rows, nb, parent, op)
            return True
        return False

    for name, (rows, nb) in _seed_rows(order):
        add(_certificate(rows, nb), rows, nb, None, f"seed:{name}")
    for kind, src in ((1, order - 2), (2, order - 4)):
        parents = corpus.keys(src)
        tasks = [(kind, *_bits.from_code(k)) for k in parents]
        for parent, kids in zip(parents, _run(tasks, pool, _expand_certs)):
            for cert, rows, nb in kids:
                add(cert, rows, nb, parent, _OPS[kind])
    frontier = sorted(found)
    while frontier:
        fresh = []
        tasks = [(0, *found[c][:2]) for c in frontier]
        for parent, kids in zip(frontier, _run(tasks, pool, _expand_certs)):
            for cert, rows, nb in kids:
                if add(cert, rows, nb, parent, "index-0"):
                    fresh.append(cert)
        frontier = sorted(fresh)

    key_of = {cert: _bits.canon(rows, nb) for cert, (rows, nb, _, _) in found.items()}
    layer = set(key_of.values())
    if len(layer) != len(found):
        raise RuntimeError(f"order {order}: canonical keys and nauty certificates disagree "
                           f"({len(layer)} keys, {len(found)} certificates)")
    prov = corpus.provenance
    for cert, (_, _, parent, op) in found.items():
        if op == "index-0":
            parent = key_of[parent]
        prov[key_of[cert]] = (parent, op)
    corpus.layers[order] = layer
    log.info("order %d: %d simple braces", order, len(layer))


# -- brute-force oracle ------------------------------------------------------------


def brute_force_graphs(max_order: int, min_degree: int, max_degree: int | None = None
                       ) -> dict[CanonicalForm, BipartiteGraph]:
    """Connected simple balanced bipartite graphs of order at most
    ``max_order`` with degrees in ``[min_degree, max_degree]``.

    Edges are added one at a time to the empty graph, with one representative
    kept per biadjacency-matrix class at every step.
    """
    if max_order > 10:
        raise GraphError("the brute-force oracle is limited to order 10")
    out = {}
    for order in range(2, max_order + 1, 2):
        n = order // 2
        cap = n if max_degree is None else max_degree
        level = {_bits.canon((0,) * n, n)}
        seen = set(level)
        while level:
            nxt = set()
            for key in level:
                rows, nb = _bits.from_code(key)
                cols = _bits.transpose(rows, nb)
                for i, r in enumerate(rows):
                    if r.bit_count() >= cap:
                        continue
                    for j in range(nb):
                        if r >> j & 1 or cols[j].bit_count() >= cap:
                            continue
                        ch = rows[:i] + (r | 1 << j,) + rows[i + 1:]
                        k = _bits.canon(ch, nb)
                        if k not in seen:
                            seen.add(k)
                            nxt.add(k)
            level = nxt
        for key in seen:
            rows, nb = _bits.from_code(key)
            dr, dc = _bits.degrees(rows, nb)
            if min(dr + dc) >= min_degree and _bits.is_connected(rows, nb):
                out[key_to_form(key)] = from_rows(rows, nb)
    return out


# -- minimal braces ----------------------------------------------------------------


def _is_minimal_key(key) -> bool:
    rows, nb = _bits.from_code(key)
    if len(rows) <= 2:
        return True
    return _bits.is_minimal(rows, nb)


def minimal_braces(max_order: int, corpus: Corpus | None = None, *, override_guardrail: bool = False,
                   workers: int = 1) -> dict[int, list]:
    """Minimal braces by order, as sorted lists of kernel keys.

    Orders covered by ``corpus`` are filtered directly.  The top order, when
    missing, is reached without closing the layer under edge addition: a
    minimal brace outside the McCuaig family has no superfluous edge, so it
    arises from a smaller brace by an expansion of index one or two.
    """
    _check_guardrail(max_order, override_guardrail)
    if corpus is None or corpus.max_order < max_order - 2:
        corpus = generate_braces(max(2, max_order - 2), override_guardrail=override_guardrail,
                                 workers=workers, corpus=corpus)
    out = {}
    for order in range(2, max_order + 1, 2):
        if order in corpus.layers:
            out[order] = sorted(k for k in corpus.layers[order] if _is_minimal_key(k))
        else:
            out[order] = _top_minimal(corpus, order, workers)
    return out


def _top_minimal(corpus, order, workers):
    reps = {_certificate(rows, nb): (rows, nb) for _, (rows, nb) in _seed_rows(order)}
    pool = Pool(workers) if workers > 1 else None
    try:
        for kind, src in ((1, order - 2), (2, order - 4)):
            tasks = [(kind, *_bits.from_code(k)) for k in corpus.keys(src)]
            for kids in _run(tasks, pool, _expand_certs):
                for cert, rows, nb in kids:
                    reps.setdefault(cert, (rows, nb))
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return sorted(_bits.canon(rows, nb) for rows, nb in reps.values() if _bits.is_minimal(rows, nb))


# -- extremal bound ----------------------------------------------------------------


@dataclass
class BoundReport:
    max_order: int
    checked: int = 0
    certificates: int = 0
    equality: list = field(default_factory=list)
    expected_equality: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and sorted(self.equality) == sorted(self.expected_equality)


def _bound_exceptions():
    from .families import make

    names = ("K2", "C4", "K33", "B8", "B10", "Q10plus")
    return {canonical_form(make(n)) for n in names}


def verify_bound(max_order: int, minimal: dict[int, list] | None = None, **kw) -> BoundReport:
    """Check ``m <= 5n - 10`` with its equality cases, and a narrow
    minimality-preserving pair with consistent arithmetic for every minimal
    brace outside the McCuaig family."""
    from .expand import find_mpp, verify_narrow
    from .families import is_mccuaig, make, q_graph

    if minimal is None:
        minimal = minimal_braces(max_order, **kw)
    exceptions = _bound_exceptions()
    rep = BoundReport(max_order)
    expected = []
    if max_order >= 10:
        expected.append(canonical_form(make("M10")).hex())
    if max_order >= 12:
        expected.append(canonical_form(make("B12")).hex())
    expected += [canonical_form(q_graph(o)).hex() for o in range(12, max_order + 1, 2)]
    rep.expected_equality = sorted(expected)

    for order in sorted(minimal):
        for key in minimal[order]:
            form = key_to_form(key)
            G = _graph(key)
            n, m = G.n, G.m
            if form not in exceptions:
                rep.checked += 1
                if m > 5 * n - 10:
                    rep.violations.append((form.hex(), f"m={m} exceeds 5n-10={5 * n - 10}"))
                elif m == 5 * n - 10:
                    rep.equality.append(form.hex())
            if order < 6 or is_mccuaig(G):
                continue
            try:
                cert = find_mpp(G)
            except GraphError as exc:
                rep.violations.append((form.hex(), f"no certificate: {exc}"))
                continue
            rep.certificates += 1
            verdict = verify_narrow(G, cert)
            if not verdict:
                rep.violations.append((form.hex(), f"certificate rejected: {verdict.reason}"))
            for problem in _arithmetic_problems(G, cert):
                rep.violations.append((form.hex(), problem))
    rep.equality.sort()
    if sorted(rep.equality) != rep.expected_equality:
        rep.violations.append(("-", "equality set differs from the expected one"))
    return rep


def _arithmetic_problems(G, cert):
    J, idx, f = cert.J, cert.index, len(cert.F)
    out = []
    if J.n != G.n - idx:
        out.append(f"n_J={J.n} but n_G-index={G.n - idx}")
    if J.m != G.m - 1 - 2 * idx - f:
        out.append(f"m_J={J.m} but m_G-1-2*index-|F|={G.m - 1 - 2 * idx - f}")
    if f > idx + 1:
        out.append(f"|F|={f} exceeds index+1")
    if J.m <= 5 * J.n - 10:
        if G.m > 5 * G.n - 10:
            out.append("bound not inherited from J")
        if G.m == 5 * G.n - 10 and not (J.m == 5 * J.n - 10 and idx == 1 and f == 2 and cert.stable_ext):
            out.append("equality case is not a stable-extension of an extremal J")
    return out


# -- harness -------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def mccuaig_keys(order: int) -> set:
    from .families import mccuaig_forms

    return {form_to_key(f) for f in mccuaig_forms(order)}


def oracle_braces(max_order: int) -> dict[int, set]:
    """Brace keys by order from the brute-force oracle (order <= 10)."""
    out: dict[int, set] = {}
    for order in range(2, max_order + 1, 2):
        min_deg = 3 if order >= 6 else 1
        for form, G in brute_force_graphs(order, min_deg).items():
            if G.order != order:
                continue
            if is_brace(G):
                out.setdefault(order, set()).add(form_to_key(form))
    return out


def check_oracle(corpus: Corpus, max_order: int) -> CheckResult:
    res = CheckResult("oracle")
    top = min(max_order, 10)
    oracle = oracle_braces(top)
    for order in range(2, top + 1, 2):
        mine, theirs = corpus.layers.get(order, set()), oracle.get(order, set())
        res.checked += len(theirs)
        for k in sorted(mine ^ theirs):
            side = "generated only" if k in mine else "oracle only"
            res.failures.append((key_to_form(k).hex(), side))
    return res


def check_thin_edges(corpus: Corpus, max_order: int) -> list[CheckResult]:
    """Strictly thin edges outside the McCuaig family, none inside it, and
    at least two thin edges everywhere (order >= 6)."""
    strict = CheckResult("strictly-thin")
    two = CheckResult("two-thin")
    mcc = CheckResult("mccuaig-no-strictly-thin")
    for order in range(6, max_order + 1, 2):
        special = mccuaig_keys(order)
        for key in corpus.keys(order):
            rows, nb = _bits.from_code(key)
            inside = key in special
            s, t = _bits.thin_scan(rows, nb, exhaustive=inside)
            (mcc if inside else strict).checked += 1
            two.checked += 1
            if inside and s:
                mcc.failures.append((key_to_form(key).hex(), f"{s} strictly thin edges"))
            if not inside and not s:
                strict.failures.append((key_to_form(key).hex(), "no strictly thin edge"))
            if t < 2:
                two.failures.append((key_to_form(key).hex(), f"{t} thin edges"))
    return [strict, two, mcc]


def check_provenance(corpus: Corpus) -> CheckResult:
    res = CheckResult("provenance")
    for order, keys in sorted(corpus.layers.items()):
        special = mccuaig_keys(order)
        for key in sorted(keys):
            if key in special:
                continue
            res.checked += 1
            parent, op = corpus.provenance.get(key, (None, None))
            if parent is None:
                res.failures.append((key_to_form(key).hex(), "no parent recorded"))
    return res


def run_harness(max_order: int, *, workers: int = 1, override_guardrail: bool = False) -> list[CheckResult]:
    corpus = generate_braces(max_order, workers=workers, override_guardrail=override_guardrail)
    checks = [check_oracle(corpus, max_order)]
    checks += check_thin_edges(corpus, max_order)
    checks.append(check_provenance(corpus))
    minimal = minimal_braces(max_order, corpus, override_guardrail=override_guardrail)
    rep = verify_bound(max_order, minimal)
    bound = CheckResult("bound", checked=rep.checked, failures=list(rep.violations))
    checks.append(bound)
    return checks
