"""Random small instances for property tests and conjecture scans.

Every generator rejects and redraws until its hypothesis holds, so callers
always receive a valid instance.
"""

from __future__ import annotations

import random

from .families import GuardFamily, check_degree_condition
from .graphs import (Digraph, UGraph, WeightedDigraph, bridge_components, is_connected,
                     weak_components)
from .orientation import GuardedInstance
from .packing import enumerate_dicuts, min_dicut_weight
from .transshipment import TransshipmentProblem


def _random_tree(rng: random.Random, n: int) -> list:
    return [(rng.randrange(v), v) for v in range(1, n)]


def random_guarded_instance(rng: random.Random, n_max: int = 8,
                            m_max: int = 16) -> GuardedInstance:
    """Connected multigraph with at most ``m_max`` edges, plus guards meeting the cut hypothesis."""
    while True:
        n = rng.randint(2, min(n_max, m_max))
        pairs = _random_tree(rng, n)
        for _ in range(rng.randint(1, max(1, min(2 * n, m_max - n + 1)))):
            u, v = rng.sample(range(n), 2)
            pairs.append((u, v))
        rng.shuffle(pairs)
        pairs = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in pairs]
        G = UGraph.from_pairs(n, pairs)
        guards = []
        for _ in range(rng.randint(0, n + 2)):
            u, v = rng.sample(range(n), 2)
            guards.append((u, v))
        H = Digraph.from_pairs(n, guards)
        F = GuardFamily(H)
        if is_connected(G) and check_degree_condition(G, F) is None:
            return GuardedInstance(G, F)


def random_packing_instance(rng: random.Random, n_max: int = 8) -> WeightedDigraph:
    """0/1-weighted digraph with bridge-connected weight-1 arcs and all dicuts of weight >= 2."""
    while True:
        n = rng.randint(2, n_max)
        # half the draws use a spanning weight-1 tree, which lands directly
        # in the base case of the reduction
        span = n if rng.random() < 0.5 else rng.randint(2, n)
        verts = rng.sample(range(n), span)
        # bias arcs along a random vertex order so that dicuts are common
        rank = {v: r for r, v in enumerate(rng.sample(range(n), n))}
        bias = rng.choice((0.5, 0.8, 0.95))

        def orient(a, b):
            forward = (a, b) if rank[a] < rank[b] else (b, a)
            return forward if rng.random() < bias else forward[::-1]

        triples = []
        for u, v in _random_tree(rng, span):
            triples.append(orient(verts[u], verts[v]) + (1,))
        # optional extra weight-1 arcs and a disjoint 2-edge-connected piece
        extra = 0 if span == n and rng.random() < 0.7 else rng.randint(0, 2)
        for _ in range(extra):
            a, b = rng.sample(verts, 2)
            triples.append((a, b, 1))
        others = [v for v in range(n) if v not in verts]
        if len(others) >= 2 and rng.random() < 0.3:
            a, b = rng.sample(others, 2)
            triples += [(a, b, 1), (b, a, 1) if rng.random() < 0.5 else (a, b, 1)]
        for _ in range(rng.randint(0, 2 * n)):
            a, b = rng.sample(range(n), 2)
            triples.append(orient(a, b) + (0,))
        rng.shuffle(triples)
        WD = WeightedDigraph.from_triples(n, triples)
        if len(bridge_components(WD.heavy_digraph().underlying())) > 1:
            continue
        if min_dicut_weight(WD) >= 2:
            return WD


def random_transshipment(rng: random.Random, n_max: int = 6, bound: int = 3,
                         p_unbounded: float = 0.15, p_unbalanced: float = 0.1,
                         ) -> TransshipmentProblem:
    n = rng.randint(1, n_max)
    pairs = []
    if n >= 2:
        for _ in range(rng.randint(0, 2 * n)):
            pairs.append(tuple(rng.sample(range(n), 2)))
    D = Digraph.from_pairs(n, pairs)
    lower, upper = {}, {}
    for aid in D.arc_ids():
        lo, hi = sorted(rng.randint(-bound, bound) for _ in range(2))
        lower[aid] = None if rng.random() < p_unbounded else lo
        upper[aid] = None if rng.random() < p_unbounded else hi
    b = [rng.randint(-bound, bound) for _ in range(n)]
    if rng.random() >= p_unbalanced:
        b[-1] -= sum(b)
    return TransshipmentProblem(D, tuple(b), lower, upper)


def random_dicut_digraph(rng: random.Random, tau: int, n_max: int = 6,
                         m_max: int = 12) -> Digraph:
    """Weakly connected digraph whose dicuts all have at least ``tau`` arcs."""
    while True:
        n = rng.randint(2, n_max)
        pairs = _random_tree(rng, n)
        pairs = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in pairs]
        while len(pairs) < m_max and rng.random() < 0.8:
            pairs.append(tuple(rng.sample(range(n), 2)))
        D = Digraph.from_pairs(n, pairs)
        if len(weak_components(D)) > 1 or len(D.arcs) > m_max:
            continue
        if all(len(arcs) >= tau for _, arcs in enumerate_dicuts(D)):
            return D
