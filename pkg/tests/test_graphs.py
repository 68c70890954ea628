from collections import Counter

import pytest
from hypothesis import given, settings

from dijoins.graphs import (Arc, Digraph, UGraph, bridges, components, contract, cut_arcs,
                            find_cycle, from_mask, is_bridge_connected, strongly_connected,
                            to_mask, weak_components)

from conftest import digraphs, ugraphs


def names(doc):
    return {v: i for i, v in enumerate(doc.vertices)}


def test_cut_single_arc():
    D = Digraph.from_pairs(2, [(0, 1)])
    assert cut_arcs(D, {0}) == ([0], [])
    assert cut_arcs(D, {1}) == ([], [0])


def test_cut_whole_vertex_set_is_empty():
    D = Digraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
    assert cut_arcs(D, {0, 1, 2}) == ([], [])


def test_cut_schrijver_a1(schrijver):
    WD = schrijver.weighted_digraph()
    out, inc = cut_arcs(WD.digraph, {names(schrijver)["A1"]})
    assert inc == []
    assert Counter(WD.weight[a] for a in out) == {0: 2, 1: 2}


def test_loops_rejected():
    with pytest.raises(ValueError):
        Digraph.from_pairs(2, [(1, 1)])
    with pytest.raises(ValueError):
        UGraph.from_pairs(2, [(0, 0)])


def test_duplicate_ids_rejected():
    with pytest.raises(ValueError):
        Digraph(2, (Arc(0, 0, 1), Arc(0, 1, 0)))


def test_strong_connectivity_examples(schrijver):
    assert strongly_connected(Digraph(1))
    assert strongly_connected(Digraph.from_pairs(2, [(0, 1), (1, 0)]))
    assert not strongly_connected(schrijver.weighted_digraph().digraph)


def test_weak_components_examples(appendix11):
    assert weak_components(Digraph(3)) == [frozenset({0}), frozenset({1}), frozenset({2})]
    assert weak_components(Digraph.from_pairs(2, [(0, 1), (1, 0)])) == [frozenset({0, 1})]
    heavy = appendix11.weighted_digraph().heavy_digraph()
    assert weak_components(heavy) == [frozenset({0, 1, 6, 10}), frozenset({2, 3, 4, 5, 7, 8, 9})]


def test_bridges_examples():
    assert bridges(UGraph.from_pairs(3, [(0, 1), (1, 2)])) == {0, 1}
    assert bridges(UGraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])) == set()
    assert bridges(UGraph.from_pairs(2, [(0, 1), (1, 0)])) == set()


def test_bridge_connected_examples():
    tree = UGraph.from_pairs(4, [(0, 1), (1, 2), (1, 3)])
    assert is_bridge_connected(tree)
    tree_and_triangle = UGraph.from_pairs(7, [(0, 1), (1, 2), (1, 3), (4, 5), (5, 6), (6, 4)])
    assert is_bridge_connected(tree_and_triangle)
    assert not is_bridge_connected(UGraph.from_pairs(4, [(0, 1), (2, 3)]))


def test_find_cycle_examples():
    assert find_cycle(UGraph.from_pairs(4, [(0, 1), (1, 2), (1, 3)])) is None
    two = find_cycle(UGraph.from_pairs(2, [(0, 1), (0, 1)]))
    assert sorted(s[0] for s in two) == [0, 1]
    # triangle 0-1-2 plus pendant 2-3
    cyc = find_cycle(UGraph.from_pairs(4, [(2, 3), (0, 1), (1, 2), (2, 0)]))
    assert sorted(s[0] for s in cyc) == [1, 2, 3]


def test_contract_examples(schrijver, appendix11):
    child, vmap, surviving = contract(Digraph.from_pairs(2, [(0, 1)]), {0, 1})
    assert child.n == 1 and child.arcs == () and surviving == []
    child, vmap, surviving = contract(Digraph.from_pairs(3, [(0, 1), (1, 2)]), {0, 1})
    assert child.n == 2 and surviving == [1] and child.arc(1) == Arc(1, 0, 1)

    idx = names(schrijver)
    WD = schrijver.weighted_digraph()
    child, vmap, surviving = contract(WD.digraph, {idx["A3"], idx["B3"]})
    target = appendix11.weighted_digraph()
    assert child.n == target.n == 11
    assert len(child.arcs) == len(target.digraph.arcs) == 20
    assert sorted(WD.weight[a] for a in surviving) == sorted(target.weight.values())


# -- properties -------------------------------------------------------------

@given(digraphs())
def test_cut_partition_and_symmetry(D):
    full = (1 << D.n) - 1
    for mask in range(1 << D.n):
        out, inc = cut_arcs(D, mask)
        assert not set(out) & set(inc)
        rout, rinc = cut_arcs(D, full & ~mask)
        assert set(out) == set(rinc) and set(inc) == set(rout)


@settings(max_examples=60)
@given(digraphs(n_max=7))
def test_strong_connectivity_matches_enumeration(D):
    full = (1 << D.n) - 1
    expected = all(cut_arcs(D, mask)[1] for mask in range(1, full))
    assert strongly_connected(D) == expected


def _recount_bridges(G):
    base = len(components(G))
    return {e.id for e in G.edges if len(components(G.without(e.id))) > base}


@given(ugraphs(n_max=8, m_max=14))
def test_bridges_match_deletion_oracle(G):
    assert bridges(G) == _recount_bridges(G)


@given(ugraphs(n_max=8, m_max=14))
def test_find_cycle_is_a_cycle_or_forest(G):
    cyc = find_cycle(G)
    forest = len(G.edges) == G.n - len(components(G))
    if cyc is None:
        assert forest
        return
    assert not forest
    edges = {e.id: e for e in G.edges}
    ids = [s[0] for s in cyc]
    assert len(set(ids)) == len(ids)
    for (eid, a, b), (_, c, _) in zip(cyc, cyc[1:] + cyc[:1]):
        assert {a, b} == {edges[eid].u, edges[eid].v}
        assert b == c
    assert len({a for _, a, _ in cyc}) == len(cyc)


@given(digraphs(n_min=2))
def test_contract_keeps_ids(D):
    S = {0, D.n - 1}
    child, vmap, surviving = contract(D, S)
    assert child.n == D.n - len(S) + 1
    for a in child.arcs:
        orig = D.arc(a.id)
        assert (vmap[orig.tail], vmap[orig.head]) == (a.tail, a.head)
    dropped = [a.id for a in D.arcs if a.tail in S and a.head in S]
    assert sorted(surviving + dropped) == sorted(D.arc_ids())


def test_mask_roundtrip():
    assert from_mask(to_mask({0, 3, 5})) == frozenset({0, 3, 5})
    assert to_mask(0b101) == 5
