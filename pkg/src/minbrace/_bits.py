"""Bitmask kernel for small simple bipartite graphs.

A graph is a pair ``(rows, nb)``: ``rows[i]`` is the neighbourhood of the
i-th vertex of class A as a bitmask over the ``nb`` vertices of class B.
Everything here is pure and works on tuples of ints, which is what keeps the
enumeration fast enough to reach order 14 on one core.
"""

from __future__ import annotations

from itertools import combinations

__all__ = [
    "transpose",
    "canon",
    "is_connected",
    "has_perfect_matching",
    "is_matching_covered",
    "is_brace_hall",
    "is_brace_quad",
    "degrees",
    "splits",
    "retract_minus_edge",
    "is_minimal",
    "index_zero_children",
    "index_one_children",
    "index_two_children",
    "is_brace_any",
    "thin_scan",
]


def transpose(rows, nb):
    cols = [0] * nb
    for i, r in enumerate(rows):
        bit = 1 << i
        while r:
            low = r & -r
            cols[low.bit_length() - 1] |= bit
            r ^= low
    return tuple(cols)


def degrees(rows, nb):
    return [r.bit_count() for r in rows], [c.bit_count() for c in transpose(rows, nb)]


def _bits_of(m):
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


# ---------------------------------------------------------------------------
# canonical form


def _rank(keys):
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(rows, cols, rc, cc):
    """Refine row/column colourings to an equitable partition."""
    nrc = max(rc) + 1 if rc else 0
    ncc = max(cc) + 1 if cc else 0
    while True:
        if nrc < len(rc):
            cm = [0] * ncc
            for j, c in enumerate(cc):
                cm[c] |= 1 << j
            rc = _rank([(rc[i], *[(r & m).bit_count() for m in cm]) for i, r in enumerate(rows)])
        k = max(rc) + 1 if rc else 0
        if ncc < len(cc):
            rm = [0] * k
            for i, c in enumerate(rc):
                rm[c] |= 1 << i
            cc = _rank([(cc[j], *[(c & m).bit_count() for m in rm]) for j, c in enumerate(cols)])
        k2 = max(cc) + 1 if cc else 0
        if k == nrc and k2 == ncc:
            return rc, cc
        nrc, ncc = k, k2


class _SearchState:
    __slots__ = ("best", "leaves", "autos")

    def __init__(self):
        self.best = None
        self.leaves = {}
        self.autos = []


def _leaf(rows, nc, rc, cc, state):
    order = sorted(range(len(rows)), key=rc.__getitem__)
    cpos = sorted(range(nc), key=lambda j: (cc[j], j))
    bit = [0] * nc
    for p, j in enumerate(cpos):
        bit[j] = 1 << (nc - 1 - p)
    code = 0
    for i in order:
        r = rows[i]
        v = 0
        while r:
            low = r & -r
            v |= bit[low.bit_length() - 1]
            r ^= low
        code = (code << nc) | v
    first = state.leaves.get(code)
    if first is None:
        state.leaves[code] = order
    else:
        # equal encodings: position-wise correspondence is an automorphism
        gamma = [0] * len(rows)
        for p, i in enumerate(first):
            gamma[i] = order[p]
        state.autos.append(gamma)
    if state.best is None or code < state.best:
        state.best = code


def _orbit_roots(n, autos, path):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in autos:
        if all(gamma[p] == p for p in path):
            for k in range(n):
                a, b = find(k), find(gamma[k])
                if a != b:
                    parent[a] = b
    return find


def _search(rows, cols, nc, rc, cc, state, path):
    n = len(rows)
    sizes = [0] * n
    for c in rc:
        sizes[c] += 1
    target = -1
    for c in range(n):
        if sizes[c] > 1:
            target = c
            break
    if target < 0:
        _leaf(rows, nc, rc, cc, state)
        return
    seen = set()
    explored = []
    for i in range(n):
        if rc[i] != target or rows[i] in seen:
            continue
        # twins are interchangeable by an automorphism; one branch suffices
        seen.add(rows[i])
        if explored and state.autos:
            find = _orbit_roots(n, state.autos, path)
            root = find(i)
            if any(find(e) == root for e in explored):
                continue
        explored.append(i)
        rc2 = [c + 1 if c > target or (c == target and k != i) else c for k, c in enumerate(rc)]
        rc3, cc3 = _refine(rows, cols, rc2, cc)
        _search(rows, cols, nc, rc3, cc3, state, path + [i])


def _canon_oriented(rows, nc):
    cols = transpose(rows, nc)
    rc = _rank([r.bit_count() for r in rows])
    cc = _rank([c.bit_count() for c in cols])
    rc, cc = _refine(rows, cols, rc, cc)
    state = _SearchState()
    _search(rows, cols, nc, rc, cc, state, [])
    return state.best


def canon(rows, nb):
    """Canonical key ``(n_rows, n_cols, code)`` invariant under relabelling
    within each class and under exchanging the two classes."""
    rows = tuple(rows)
    na = len(rows)
    if na == 0 or nb == 0:
        return (min(na, nb), max(na, nb), 0)
    if na > nb:
        cols = transpose(rows, nb)
        return (nb, na, _canon_oriented(cols, na))
    if na < nb:
        return (na, nb, _canon_oriented(rows, nb))
    cols = transpose(rows, nb)
    dr = sorted(r.bit_count() for r in rows)
    dc = sorted(c.bit_count() for c in cols)
    if dr < dc:
        return (na, nb, _canon_oriented(rows, nb))
    if dc < dr:
        return (na, nb, _canon_oriented(cols, na))
    return (na, nb, min(_canon_oriented(rows, nb), _canon_oriented(cols, na)))


def from_code(key):
    """Rebuild ``(rows, nb)`` from a canonical key."""
    nr, nc, code = key
    full = (1 << nc) - 1
    rows = []
    for i in range(nr):
        shift = (nr - 1 - i) * nc
        v = (code >> shift) & full
        r = 0
        for p in range(nc):
            if v >> (nc - 1 - p) & 1:
                r |= 1 << p
        rows.append(r)
    return tuple(rows), nc


# ---------------------------------------------------------------------------
# connectivity and matchings


def is_connected(rows, nb):
    na = len(rows)
    if na + nb == 0:
        return False
    if na == 0 or nb == 0:
        return na + nb == 1
    cols = transpose(rows, nb)
    seen_r, seen_c = 1, 0
    frontier_r, frontier_c = 1, 0
    while frontier_r or frontier_c:
        new_c = 0
        for i in _bits_of(frontier_r):
            new_c |= rows[i]
        new_c &= ~seen_c
        new_r = 0
        for j in _bits_of(frontier_c):
            new_r |= cols[j]
        new_r &= ~seen_r
        seen_c |= new_c
        seen_r |= new_r
        frontier_r, frontier_c = new_r, new_c
    return seen_r == (1 << na) - 1 and seen_c == (1 << nb) - 1


def _max_matching(rows, rmask, cmask):
    """Kuhn's augmenting paths restricted to the given row/column masks."""
    match_col = {}

    def augment(i, visited):
        cand = rows[i] & cmask & ~visited[0]
        while cand:
            low = cand & -cand
            cand ^= low
            visited[0] |= low
            j = low.bit_length() - 1
            if j not in match_col or augment(match_col[j], visited):
                match_col[j] = i
                return True
        return False

    size = 0
    for i in _bits_of(rmask):
        if augment(i, [0]):
            size += 1
    return size, match_col


def has_perfect_matching(rows, nb, rmask=None, cmask=None):
    if rmask is None:
        rmask = (1 << len(rows)) - 1
    if cmask is None:
        cmask = (1 << nb) - 1
    k = rmask.bit_count()
    if k != cmask.bit_count():
        return False
    size, _ = _max_matching(rows, rmask, cmask)
    return size == k


def is_matching_covered(rows, nb):
    """Connected, balanced, and every A-vertex has Hall surplus >= 1 on
    proper subsets (equivalently every edge lies in a perfect matching)."""
    n = len(rows)
    if n != nb or n == 0 or not is_connected(rows, nb):
        return False
    for i in range(n):
        for j in _bits_of(rows[i]):
            if not has_perfect_matching(rows, nb, ((1 << n) - 1) ^ (1 << i), ((1 << n) - 1) ^ (1 << j)):
                return False
    return True


def is_brace_hall(rows, nb):
    """Brace test for order >= 6 via |N(Z)| >= |Z| + 2 on Z within A."""
    n = len(rows)
    if n != nb or n < 3:
        raise ValueError("hall brace test needs a balanced graph of order >= 6")
    for r in rows:
        if r.bit_count() < 3:
            return False
    limit = n - 2
    size = 1 << n
    nbhd = [0] * size
    pc = [0] * size
    for z in range(1, size):
        low = z & -z
        rest = z ^ low
        v = nbhd[rest] | rows[low.bit_length() - 1]
        nbhd[z] = v
        k = pc[rest] + 1
        pc[z] = k
        if k <= limit and v.bit_count() < k + 2:
            return False
    return True


def is_brace_quad(rows, nb):
    """Brace test for order >= 6: every G - a1 - a2 - b1 - b2 has a perfect
    matching, and G itself is matching covered."""
    n = len(rows)
    if n != nb or n < 3:
        raise ValueError("quadruple-deletion brace test needs a balanced graph of order >= 6")
    if not is_matching_covered(rows, nb):
        return False
    full = (1 << n) - 1
    for a1, a2 in combinations(range(n), 2):
        rm = full ^ (1 << a1) ^ (1 << a2)
        for b1, b2 in combinations(range(n), 2):
            if not has_perfect_matching(rows, nb, rm, full ^ (1 << b1) ^ (1 << b2)):
                return False
    return True


# ---------------------------------------------------------------------------
# retract after an edge deletion


def retract_minus_edge(rows, nb, i, j):
    """Retract of ``G - ij`` for a simple graph of minimum degree >= 3.

    Returns ``(rows', nb', simple)`` where ``rows'`` is the underlying simple
    graph of the retract.
    """
    na = len(rows)
    mult = [[(r >> c) & 1 for c in range(nb)] for r in rows]
    mult[i][j] = 0
    alive_r = [True] * na
    alive_c = [True] * nb
    changed = True
    while changed:
        changed = False
        for r in range(na):
            if not alive_r[r]:
                continue
            nbrs = [c for c in range(nb) if alive_c[c] and mult[r][c]]
            if sum(mult[r][c] for c in nbrs) == 2 and len(nbrs) == 2:
                c1, c2 = nbrs
                for rr in range(na):
                    if rr != r and alive_r[rr]:
                        mult[rr][c1] += mult[rr][c2]
                alive_r[r] = False
                alive_c[c2] = False
                changed = True
        for c in range(nb):
            if not alive_c[c]:
                continue
            nbrs = [r for r in range(na) if alive_r[r] and mult[r][c]]
            if sum(mult[r][c] for r in nbrs) == 2 and len(nbrs) == 2:
                r1, r2 = nbrs
                for cc in range(nb):
                    if cc != c and alive_c[cc]:
                        mult[r1][cc] += mult[r2][cc]
                alive_c[c] = False
                alive_r[r2] = False
                changed = True
        if sum(alive_r) <= 1:
            break
    rlist = [r for r in range(na) if alive_r[r]]
    clist = [c for c in range(nb) if alive_c[c]]
    simple = True
    out = []
    for r in rlist:
        v = 0
        for p, c in enumerate(clist):
            m = mult[r][c]
            if m:
                v |= 1 << p
                if m > 1:
                    simple = False
        out.append(v)
    return tuple(out), len(clist), simple


def is_minimal(rows, nb):
    """For a simple brace of order >= 6: no edge between two noncubic
    vertices is superfluous."""
    cols = transpose(rows, nb)
    heavy_c = 0
    for j, c in enumerate(cols):
        if c.bit_count() > 3:
            heavy_c |= 1 << j
    for i, r in enumerate(rows):
        if r.bit_count() <= 3:
            continue
        for j in _bits_of(r & heavy_c):
            trial = rows[:i] + (r ^ (1 << j),) + rows[i + 1:]
            if is_brace_hall(trial, nb):
                return False
    return True


# ---------------------------------------------------------------------------
# expansions (row-side; apply to the transpose for the other class)


def splits(mask):
    """Unordered partitions of ``mask`` into two parts of size >= 2."""
    elems = _bits_of(mask)
    if len(elems) < 4:
        return []
    first = 1 << elems[0]
    rest = elems[1:]
    out = []
    for k in range(1, len(rest)):
        for combo in combinations(rest, k):
            part1 = first
            for e in combo:
                part1 |= 1 << e
            part2 = mask ^ part1
            if part2.bit_count() >= 2:
                out.append((part1, part2))
    return out


def index_zero_children(rows, nb):
    for i, r in enumerate(rows):
        for j in range(nb):
            if not r >> j & 1:
                yield (i, j), rows[:i] + (r | (1 << j),) + rows[i + 1:], nb


def index_one_children(rows, nb):
    """Expansions of index one at a noncubic row vertex ``a``.

    Row ``a`` keeps part1, a new row gets part2, and a new column ``b0`` is
    joined to both halves and to a third row ``w``.
    """
    na = len(rows)
    b0 = 1 << nb
    for a, r in enumerate(rows):
        if r.bit_count() < 4:
            continue
        for p1, p2 in splits(r):
            base = list(rows)
            base[a] = p1 | b0
            base.append(p2 | b0)
            for w in range(na):
                if w == a:
                    continue
                child = list(base)
                child[w] |= b0
                yield (a, w, p1, p2), tuple(child), nb + 1


def index_two_children(rows, nb):
    """Expansions of index two at a noncubic row ``a`` and column ``b``."""
    na = len(rows)
    cols = transpose(rows, nb)
    a0 = na + 1          # new row index (a2 takes na)
    b0 = nb + 1          # new column index (b2 takes nb)
    for a, r in enumerate(rows):
        if r.bit_count() < 4:
            continue
        a_splits = splits(r)
        for b, c in enumerate(cols):
            if c.bit_count() < 4:
                continue
            b_splits = splits(c)
            for pa1, pa2 in a_splits:
                for pb1, pb2 in b_splits:
                    # rows: a -> a (pa1), na (pa2); cols: b -> b (pb1), nb (pb2)
                    new = [0] * (na + 2)
                    for i in range(na):
                        if i == a:
                            continue
                        v = rows[i] & ~(1 << b)
                        if pb2 >> i & 1:
                            v |= 1 << nb
                        elif pb1 >> i & 1:
                            v |= 1 << b
                        new[i] = v
                    for half, part in ((a, pa1), (na, pa2)):
                        v = part & ~(1 << b)
                        if part >> b & 1:
                            # the edge ab: goes to whichever half of b holds a
                            v |= (1 << nb) if pb2 >> a & 1 else (1 << b)
                        new[half] = v | (1 << b0)
                    new[a0] = (1 << b) | (1 << nb) | (1 << b0)
                    yield (a, b, pa1, pa2, pb1, pb2), tuple(new), nb + 2


# ---------------------------------------------------------------------------
# thin-edge scan


def is_brace_any(rows, nb):
    """Brace test on an underlying simple graph of any order."""
    n = len(rows)
    if n != nb or n == 0:
        return False
    if n <= 2:
        return all(r == (1 << n) - 1 for r in rows)
    return is_brace_hall(rows, nb)


def thin_scan(rows, nb, exhaustive=False):
    """``(strictly_thin, thin)`` edge counts of a simple brace of order >= 6.

    Unless ``exhaustive``, the scan stops once one strictly thin edge and two
    thin edges have been seen.  Edges joining two noncubic vertices go first
    since they are the only superfluous candidates.
    """
    deg_r, deg_c = degrees(rows, nb)
    edges = [(i, j) for i, r in enumerate(rows) for j in _bits_of(r)]
    edges.sort(key=lambda ij: (deg_r[ij[0]] == 3) + (deg_c[ij[1]] == 3))
    strict = thin = 0
    for i, j in edges:
        if deg_r[i] > 3 and deg_c[j] > 3:
            trial = rows[:i] + (rows[i] ^ (1 << j),) + rows[i + 1:]
            if is_brace_hall(trial, nb):
                strict += 1
                thin += 1
                if not exhaustive and thin >= 2:
                    break
                continue
        h, hb, simple = retract_minus_edge(rows, nb, i, j)
        if is_brace_any(h, hb):
            thin += 1
            strict += simple
        if not exhaustive and strict >= 1 and thin >= 2:
            break
    return strict, thin
