import random

import pytest
from hypothesis import strategies as st

from dijoins.graphs import Digraph
from dijoins.instances import builtin


@pytest.fixture(scope="session")
def schrijver():
    return builtin("schrijver")


@pytest.fixture(scope="session")
def fig1a():
    return builtin("fig1a")


@pytest.fixture(scope="session")
def appendix11():
    return builtin("appendix11")


@pytest.fixture
def rng():
    return random.Random(20261016)


@st.composite
def digraphs(draw, n_min=1, n_max=7, m_max=12):
    n = draw(st.integers(n_min, n_max))
    if n < 2:
        return Digraph(n)
    pairs = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1]),
        max_size=m_max))
    return Digraph.from_pairs(n, pairs)


@st.composite
def ugraphs(draw, n_min=1, n_max=7, m_max=12):
    D = draw(digraphs(n_min, n_max, m_max))
    return D.underlying()
