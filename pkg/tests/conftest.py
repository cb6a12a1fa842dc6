import numpy as np
import pytest
from hypothesis import strategies as st

from subfit.lattice import (
    FiniteLattice,
    FinitePoset,
    boolean_lattice,
    chain,
    downset_corpus,
    downset_lattice,
    load_lattice,
    transitive_closure,
)

CHAIN3 = '{"elements":["bot","m","top"],"covers":[["bot","m"],["m","top"]]}'
SQUARE = '{"elements":["bot","x","y","top"],"covers":[["bot","x"],["bot","y"],["x","top"],["y","top"]]}'
M3 = ('{"elements":["bot","a","b","c","top"],"covers":[["bot","a"],["bot","b"],["bot","c"],'
      '["a","top"],["b","top"],["c","top"]]}')


@pytest.fixture
def chain3():
    return load_lattice(CHAIN3)


@pytest.fixture
def square():
    return load_lattice(SQUARE)


@pytest.fixture
def m3():
    return load_lattice(M3)


@pytest.fixture
def one():
    return load_lattice('{"elements":["o"],"covers":[]}')


@pytest.fixture(scope="session")
def corpus():
    """Downset lattices of all posets with at most 4 points (25 lattices, sizes 1..16)."""
    return downset_corpus(4)


@pytest.fixture(scope="session")
def small_corpus(corpus):
    return [L for L in corpus if L.size <= 6]


@st.composite
def posets(draw, max_size=5):
    n = draw(st.integers(0, max_size))
    rel = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            rel[i, j] = draw(st.booleans())
    perm = draw(st.permutations(range(n))) if n else []
    leq = transitive_closure(rel)
    if n:
        leq = leq[np.ix_(perm, perm)]
    return FinitePoset.from_leq(leq, [chr(ord("a") + i) for i in range(n)])


@st.composite
def distributive_lattices(draw, max_poset=4):
    return downset_lattice(draw(posets(max_poset)))


def permuted(L, perm):
    """Same lattice with element indices reordered by ``perm``."""
    perm = list(perm)
    return FiniteLattice.from_leq(L.leq[np.ix_(perm, perm)], [L.labels[p] for p in perm])


@st.composite
def shuffled_lattices(draw, max_poset=3):
    L = draw(distributive_lattices(max_poset))
    return permuted(L, draw(st.permutations(range(L.size))))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in mod.RESULTS.items():
        terminalreporter.write_line(f"{verdict.split(' ')[0]:4}  {name}"
                                    + ("" if verdict == "PASS" else f"  {verdict[5:]}"))
