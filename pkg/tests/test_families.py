import pytest
from hypothesis import given, settings

from dijoins.errors import SizeLimitError
from dijoins.families import (BoundFunction, ExplicitFamily, GuardFamily, check_degree_condition,
                              complement_family, enumerate_family, f_value, family_masks,
                              is_crossing_family, is_member)
from dijoins.graphs import Digraph, UGraph

from conftest import digraphs


def complete_bidirected(n):
    return Digraph.from_pairs(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def test_is_member_examples(fig1a):
    assert is_member(GuardFamily(Digraph(3)), {1})
    assert not is_member(GuardFamily(Digraph.from_pairs(2, [(1, 0)])), {0})
    inst = fig1a.guarded_instance()
    a1 = fig1a.vertices.index("A1")
    entering = [a for a in inst.guards.guard.arcs if a.head == a1]
    assert is_member(inst.guards, {a1}) == (not entering)


def test_empty_and_full_sets_are_never_members():
    F = GuardFamily(Digraph(3))
    assert not is_member(F, set())
    assert not is_member(F, {0, 1, 2})


def test_enumerate_examples(fig1a):
    assert enumerate_family(GuardFamily(complete_bidirected(3))) == []
    assert enumerate_family(GuardFamily(Digraph(2))) == [frozenset({0}), frozenset({1})]
    inst = fig1a.guarded_instance()
    members = set(enumerate_family(inst.guards))
    dashed = [(a.tail, a.head) for a in inst.guards.guard.arcs]
    for mask in range(1, (1 << 12) - 1):
        U = {v for v in range(12) if (mask >> v) & 1}
        no_dashed_entering = not any(h in U and t not in U for t, h in dashed)
        assert (frozenset(U) in members) == no_dashed_entering


def test_enumeration_limit():
    with pytest.raises(SizeLimitError):
        family_masks(GuardFamily(Digraph(5)), limit=4)


def test_complement_family():
    assert complement_family([{0}], 2) == [frozenset({1})]
    assert complement_family([], 3) == []
    sets = [frozenset({0, 2}), frozenset({1})]
    assert complement_family(complement_family(sets, 3), 3) == sets


def test_complement_of_appendix_family(appendix11):
    F = GuardFamily(appendix11.weighted_digraph().digraph)
    c1 = enumerate_family(F)
    c2 = complement_family(c1, F.n)
    assert len(c2) == len(c1) and len(set(c2)) == len(c2)


def test_crossing_examples():
    assert is_crossing_family(ExplicitFamily(4, [])) is True
    bad = is_crossing_family(ExplicitFamily(4, [{0, 1}, {1, 2}]))
    assert set(map(frozenset, bad)) == {frozenset({0, 1}), frozenset({1, 2})}
    assert is_crossing_family(ExplicitFamily(4, [{0, 1}, {1, 2}, {1}, {0, 1, 2}])) is True
    # a crossing pair must have a nonempty meet and a join short of V
    assert is_crossing_family(ExplicitFamily(3, [{0}, {1}])) is True
    assert is_crossing_family(ExplicitFamily(3, [{0, 1}, {1, 2}])) is True


def test_explicit_family_rejects_trivial_sets():
    with pytest.raises(ValueError):
        ExplicitFamily(3, [set()])
    with pytest.raises(ValueError):
        ExplicitFamily(3, [{0, 1, 2}])


def test_degree_condition_examples(fig1a):
    path = UGraph.from_pairs(3, [(0, 1), (1, 2)])
    assert check_degree_condition(path, GuardFamily(complete_bidirected(3))) is None
    # only {0} survives: 1 and 2 both guard-reach everything else
    H = Digraph.from_pairs(3, [(1, 2), (2, 1), (0, 1), (0, 2)])
    assert enumerate_family(GuardFamily(H)) == [frozenset({0})]
    assert check_degree_condition(path, GuardFamily(H)) == frozenset({0})
    inst = fig1a.guarded_instance()
    assert check_degree_condition(inst.graph, inst.guards) is None


def test_f_values(appendix11):
    WD = appendix11.weighted_digraph()
    heavy = WD.heavy_digraph()
    assert f_value(BoundFunction(heavy, 1), {0}) == 1
    assert f_value(BoundFunction(heavy, 2), {6}) == -1
    assert f_value(BoundFunction(Digraph.from_pairs(2, [(1, 0)])), {0}) == -1


# -- properties -------------------------------------------------------------

@settings(max_examples=80)
@given(digraphs(n_max=7))
def test_guard_families_are_crossing(H):
    F = GuardFamily(H)
    assert is_crossing_family(F) is True
    comp = complement_family(family_masks(F), H.n)
    assert is_crossing_family(ExplicitFamily(H.n, comp)) is True


@settings(max_examples=60)
@given(digraphs(n_max=7))
def test_is_member_agrees_with_enumeration(H):
    F = GuardFamily(H)
    members = set(family_masks(F))
    for mask in range(1 << H.n):
        assert is_member(F, mask) == (mask in members)


@settings(max_examples=40)
@given(digraphs(n_max=6), digraphs(n_max=6))
def test_bound_function_is_crossing_submodular(H, D):
    if D.n != H.n:
        D = Digraph(H.n, tuple(a for a in D.arcs if a.tail < H.n and a.head < H.n))
    F = GuardFamily(H)
    full = (1 << H.n) - 1
    for side, masks in ((1, family_masks(F)),
                        (2, [full & ~m for m in family_masks(F)])):
        B = BoundFunction(D, side)
        f = {m: f_value(B, m) for m in masks}
        for U in masks:
            for W in masks:
                if U & W and (U | W) != full:
                    assert f[U & W] + f[U | W] <= f[U] + f[W]
