from itertools import combinations
from math import comb

import pytest
from hypothesis import settings, strategies as st

from cofilling.cochain import Cochain

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def cochains(draw, n=st.integers(2, 8), arity=None):
    n = draw(n) if not isinstance(n, int) else n
    r = draw(st.integers(1, n - 1)) if arity is None else arity
    bits = draw(st.integers(0, (1 << comb(n, r)) - 1))
    return Cochain(n, r, bits)


def naive_coboundary(e: Cochain) -> set:
    members = set(e.sets())
    out = set()
    for f in combinations(range(1, e.n + 1), e.arity + 1):
        hits = sum(1 for i in range(len(f)) if f[:i] + f[i + 1:] in members)
        if hits % 2:
            out.add(f)
    return out


@pytest.fixture
def fx():
    return Cochain.from_sets(5, 3, [(1, 2, 3), (1, 2, 4), (1, 2, 5)])


@pytest.fixture
def fy():
    return Cochain.from_sets(5, 3, [(1, 2, 3), (2, 3, 4), (2, 3, 5)])


@pytest.fixture
def fz():
    return Cochain.from_sets(5, 3, [(1, 2, 3), (1, 3, 5), (2, 3, 4), (3, 4, 5)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance")
        for line in RESULTS:
            terminalreporter.write_line(line)
