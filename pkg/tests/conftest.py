import copy
import hashlib
import pickle
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

import minbrace
from minbrace import build
from minbrace.enumeration import Corpus, generate_braces

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_SRC = Path(minbrace.__file__).parent


def _source_digest() -> str:
    h = hashlib.sha256()
    for p in sorted(_SRC.glob("*.py")):
        h.update(p.name.encode())
        h.update(p.read_bytes())
    return h.hexdigest()[:16]


@st.composite
def bipartite_graphs(draw, min_n=1, max_n=5, balanced=True, connected=False):
    """Simple bipartite graphs with classes ``0..na-1`` and ``na..``.

    Connected graphs grow a random spanning tree first, so nothing is
    filtered out.
    """
    na = draw(st.integers(min_n, max_n))
    nb = na if balanced else draw(st.integers(min_n, max_n))
    cells = [(i, j) for i in range(na) for j in range(nb)]
    pairs = set()
    if connected:
        rest = [("a", i) for i in range(1, na)] + [("b", j) for j in range(1, nb)]
        rest = draw(st.permutations(rest))
        seen = {"a": [0], "b": [0]}
        pairs.add((0, 0))
        for side, v in rest:
            other = "b" if side == "a" else "a"
            u = draw(st.sampled_from(seen[other]))
            pairs.add((v, u) if side == "a" else (u, v))
            seen[side].append(v)
    extra = draw(st.lists(st.sampled_from(cells), unique=True, max_size=len(cells)))
    pairs.update(extra)
    return build(na, nb, sorted(pairs))


@pytest.fixture(scope="session")
def corpus10() -> Corpus:
    return generate_braces(10)


@pytest.fixture(scope="session")
def corpus12(corpus10) -> Corpus:
    return generate_braces(12, corpus=copy.deepcopy(corpus10))


@pytest.fixture(scope="session")
def corpus14(request, corpus12) -> Corpus:
    """Order-14 corpus, cached on disk against a digest of the package
    sources so a code change always forces a rebuild."""
    cache_dir = Path(request.config.cache.mkdir("minbrace"))
    path = cache_dir / f"corpus14-{_source_digest()}.pkl"
    if path.exists():
        with open(path, "rb") as fh:
            return pickle.load(fh)
    corpus = generate_braces(14, corpus=copy.deepcopy(corpus12))
    for old in cache_dir.glob("corpus14-*.pkl"):
        old.unlink()
    with open(path, "wb") as fh:
        pickle.dump(corpus, fh, protocol=pickle.HIGHEST_PROTOCOL)
    return corpus
