import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dijoins.errors import PreconditionError
from dijoins.families import GuardFamily, family_masks
from dijoins.graphs import Digraph, UGraph, orientation_of
from dijoins.oracles import brute_force_strong_orientation
from dijoins.orientation import (GuardedInstance, bound_constraints, check_x_feasible,
                                 compute_x_prime, covering_violation, find_integral_x,
                                 lift_to_y, round_binary, strong_orient,
                                 verify_strong_orientation)
from dijoins.random_instances import random_guarded_instance
from dijoins.transshipment import TransshipmentProblem, verify

from conftest import digraphs

A, B, C = 0, 1, 2
PATH = UGraph.from_pairs(3, [(A, B), (B, C)])
# guards leave only {b} unentered
PATH_GUARDS = GuardFamily(Digraph.from_pairs(3, [(B, A), (B, C), (C, A), (A, C)]))


@pytest.fixture
def path_instance():
    return GuardedInstance(PATH, PATH_GUARDS)


def test_path_family_is_middle_vertex():
    assert family_masks(PATH_GUARDS) == [1 << B]


def test_x_prime_examples(appendix11):
    assert compute_x_prime(Digraph.from_pairs(3, [(0, 1), (1, 2)])) == [
        Fraction(1, 2), 0, Fraction(-1, 2)]
    assert compute_x_prime(Digraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])) == [0, 0, 0]
    heavy = appendix11.weighted_digraph().heavy_digraph()
    assert compute_x_prime(heavy)[0] == 1


def test_x_feasibility_examples(path_instance):
    assert check_x_feasible(compute_x_prime(path_instance.reference), path_instance) is None
    # reference a->b->c leaves {b} with out-degree 1, so f({b}) = 0, and the
    # complement side gives x_b >= 1 - in-degree = 0; a sum-zero vector that
    # pushes x_b to 1 breaks the first
    assert check_x_feasible([0, 1, -1], path_instance) == (1, frozenset({B}))
    assert check_x_feasible([0, 0, 1], path_instance) == (0, frozenset({0, 1, 2}))


def test_zero_is_infeasible_when_a_bound_is_negative():
    # star with both edges out of the centre, so the leaves have out-degree 0
    G = UGraph.from_pairs(3, [(0, 1), (0, 2)])
    inst = GuardedInstance(G, GuardFamily(Digraph.from_pairs(3, [(1, 2), (2, 1)])))
    assert family_masks(inst.guards) == [1, 6]
    side, U = check_x_feasible([0, 0, 0], inst)
    assert side == 1 and U == frozenset({1, 2})


def test_integral_x_with_empty_family():
    inst = GuardedInstance(PATH, GuardFamily(Digraph.from_pairs(3, [(0, 1), (1, 0), (1, 2), (2, 1)])))
    assert family_masks(inst.guards) == []
    x, _ = find_integral_x(inst)
    assert x == [0, 0, 0]


def test_integral_x_matches_brute_force_box(path_instance):
    cons = bound_constraints(path_instance)
    feasible = [list(x) for x in itertools.product(range(-2, 3), repeat=3)
                if sum(x) == 0 and all(sum(x[v] for v in range(3) if (m >> v) & 1) <= b
                                       for _, m, b in cons)]
    x, _ = find_integral_x(path_instance)
    assert x in feasible


def test_lift_examples():
    D = Digraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)])
    assert lift_to_y(D, [0, 0, 0]) == {0: 0, 1: 0, 2: 0}
    assert lift_to_y(Digraph.from_pairs(2, [(0, 1)]), [1, -1]) == {0: 1}


def test_lift_rejects_unbalanced_components():
    with pytest.raises(PreconditionError):
        lift_to_y(Digraph(2), [1, -1])


def test_round_binary_examples():
    assert round_binary({0: 2, 1: 0, 2: -1, 3: 1}) == {0: 1, 1: 0, 2: 0, 3: 1}
    assert round_binary({0: 0, 1: 0}) == {0: 0, 1: 0}
    assert round_binary({0: 1, 1: 1}) == {0: 1, 1: 1}


def test_strong_orient_empty_family_keeps_reference():
    inst = GuardedInstance(PATH, GuardFamily(Digraph.from_pairs(3, [(0, 1), (1, 0), (1, 2), (2, 1)])))
    orientation, trace = strong_orient(inst)
    assert orientation == orientation_of(inst.reference)
    assert trace.flipped == []


def test_strong_orient_path(path_instance):
    orientation, trace = strong_orient(path_instance)
    into_b = sum(1 for t, h in orientation.values() if h == B)
    out_of_b = sum(1 for t, h in orientation.values() if t == B)
    assert into_b == 1 and out_of_b == 1
    # four orientations, two of them strong
    strong = []
    for bits in itertools.product((0, 1), repeat=2):
        o = {eid: (e.v, e.u) if bit else (e.u, e.v) for (eid, e), bit in
             zip(((e.id, e) for e in PATH.edges), bits)}
        if verify_strong_orientation(o, PATH_GUARDS):
            strong.append(o)
    assert len(strong) == 2 and orientation in strong


def test_strong_orient_preconditions(fig1a):
    with pytest.raises(PreconditionError) as info:
        strong_orient(fig1a.guarded_instance())
    assert len(info.value.witness) == 3
    H = Digraph.from_pairs(3, [(1, 2), (2, 1), (0, 1), (0, 2)])
    with pytest.raises(PreconditionError) as info:
        strong_orient(GuardedInstance(PATH, GuardFamily(H)))
    assert info.value.witness == [0]


def test_verify_examples(fig1a):
    assert verify_strong_orientation({0: (A, B), 1: (B, C)}, PATH_GUARDS)
    assert not verify_strong_orientation({0: (A, B), 1: (C, B)}, PATH_GUARDS)
    assert verify_strong_orientation({0: (A, B), 1: (B, C)},
                                     GuardFamily(Digraph.from_pairs(3, [(0, 1), (1, 0), (1, 2), (2, 1)])))
    inst = fig1a.guarded_instance()
    edges = sorted(inst.graph.edges)
    for bits in itertools.product((0, 1), repeat=len(edges)):
        o = {e.id: (e.v, e.u) if bit else (e.u, e.v) for e, bit in zip(edges, bits)}
        assert not verify_strong_orientation(o, inst.guards)


# -- properties -------------------------------------------------------------

@given(digraphs())
def test_x_prime_sums_to_zero(D):
    x = compute_x_prime(D)
    assert sum(x) == 0
    assert all(v.denominator in (1, 2) for v in map(Fraction, x))


def test_pipeline_properties_random():
    rng = random.Random(11)
    for _ in range(150):
        inst = random_guarded_instance(rng)
        cons = bound_constraints(inst)
        assert check_x_feasible(compute_x_prime(inst.reference), inst, constraints=cons) is None
        orientation, trace = strong_orient(inst)
        assert check_x_feasible(trace.x_bar, inst, constraints=cons) is None
        P = TransshipmentProblem(inst.reference, tuple(trace.x_bar))
        assert verify(P, trace.y_bar)
        assert covering_violation(inst.reference, [m for _, m, _ in cons], trace.y_star) is None
        assert verify_strong_orientation(orientation, inst.guards, method="enumerate")
        assert verify_strong_orientation(orientation, inst.guards, method="connectivity")
        if len(inst.graph.edges) <= 16:
            assert brute_force_strong_orientation(inst.graph, inst.guards) is not None


def test_rounding_preserves_covering_feasibility():
    rng = random.Random(12)
    checked = 0
    while checked < 300:
        inst = random_guarded_instance(rng, n_max=6)
        masks = [m for _, m, _ in bound_constraints(inst)]
        y = {aid: rng.randint(-2, 3) for aid in inst.reference.arc_ids()}
        if covering_violation(inst.reference, masks, y) is not None:
            continue
        checked += 1
        assert covering_violation(inst.reference, masks, round_binary(y)) is None


@settings(max_examples=60)
@given(st.data())
def test_verification_methods_agree(data):
    seed = data.draw(st.integers(0, 10 ** 6))
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    G = UGraph.from_pairs(n, [tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(1, 10))])
    H = Digraph.from_pairs(n, [tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(0, 8))])
    o = {e.id: (e.u, e.v) if rng.random() < 0.5 else (e.v, e.u) for e in G.edges}
    F = GuardFamily(H)
    assert (verify_strong_orientation(o, F, method="enumerate")
            == verify_strong_orientation(o, F, method="connectivity"))


def test_fallback_when_search_is_capped(caplog):
    rng = random.Random(5)
    methods = set()
    for _ in range(20):
        inst = random_guarded_instance(rng, n_max=6)
        orientation, trace = strong_orient(inst, max_deviation=0)
        methods.add(trace.method)
        assert verify_strong_orientation(orientation, inst.guards)
    assert "fallback" in methods
    assert "exhausted at deviation 0" in caplog.text
