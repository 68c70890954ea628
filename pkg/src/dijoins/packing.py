"""Two disjoint dijoins inside the weight-1 arcs of a 0/1-weighted digraph.

The instance is reduced by contracting cycles of weight-1 arcs and by
eliminating vertices that touch no weight-1 arc, until the weight-1 arcs form
a spanning tree. The tree is then strongly oriented for the family of dicut
shores; the arcs it flips and the arcs it keeps are the two dijoins. Each
reduction is undone in reverse order, and the final pair is checked against
the original instance.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import ContractError, PreconditionError
from .families import DEFAULT_LIMIT, GuardFamily, family_masks
from .graphs import (Arc, Digraph, WeightedDigraph, bridge_components, contract,
                     find_cycle, from_mask, strongly_connected)
from .orientation import DEFAULT_MAX_DEVIATION, GuardedInstance, strong_orient

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DijoinPair:
    first: frozenset
    second: frozenset

    def __post_init__(self):
        object.__setattr__(self, "first", frozenset(self.first))
        object.__setattr__(self, "second", frozenset(self.second))
        if self.first & self.second:
            raise ValueError("dijoins of a pair must be disjoint")


@dataclass
class ReductionStep:
    kind: str  # "contract", "eliminate" or "base"
    child: WeightedDigraph
    cycle: list = field(default_factory=list)
    forward: list = field(default_factory=list)
    backward: list = field(default_factory=list)
    vertex: Optional[int] = None
    added: list = field(default_factory=list)


def enumerate_dicuts(D: Digraph, limit: int = DEFAULT_LIMIT) -> list:
    """All ``(shore, dicut arc ids)`` with no arc entering the shore."""
    out = []
    for mask in family_masks(GuardFamily(D), limit):
        arcs = [a.id for a in D.arcs if (mask >> a.tail) & 1 and not (mask >> a.head) & 1]
        out.append((from_mask(mask), arcs))
    return out


def lightest_dicut(WD: WeightedDigraph, limit: int = DEFAULT_LIMIT) -> tuple:
    """``(weight, shore)`` of a minimum-weight dicut, or ``(inf, None)``."""
    best, shore = math.inf, None
    for U, arcs in enumerate_dicuts(WD.digraph, limit):
        w = sum(WD.weight[aid] for aid in arcs)
        if w < best:
            best, shore = w, U
    return best, shore


def min_dicut_weight(WD: WeightedDigraph, limit: int = DEFAULT_LIMIT):
    return lightest_dicut(WD, limit)[0]


def _dijoin_by_reversal(D: Digraph, J: set) -> bool:
    extra = tuple(Arc(("rev", a.id), a.head, a.tail) for a in D.arcs if a.id in J)
    return strongly_connected(Digraph(D.n, D.arcs + extra))


def _dijoin_by_dicuts(D: Digraph, J: set, limit: int) -> bool:
    return all(any(aid in J for aid in arcs) for _, arcs in enumerate_dicuts(D, limit))


def is_dijoin(D: Digraph, J: Iterable[int], method: str = "both",
              limit: int = DEFAULT_LIMIT) -> bool:
    """``method``: ``"reversal"``, ``"dicuts"``, or ``"both"`` (which must agree)."""
    J = set(J)
    missing = [aid for aid in J if not D.has_arc(aid)]
    if missing:
        raise ValueError(f"arc ids {missing} are not arcs of the digraph")
    if method == "reversal":
        return _dijoin_by_reversal(D, J)
    if method == "dicuts":
        return _dijoin_by_dicuts(D, J, limit)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    a = _dijoin_by_reversal(D, J)
    if D.n <= limit:
        b = _dijoin_by_dicuts(D, J, limit)
        if a != b:
            raise ContractError("dijoin characterisations disagree", detail=sorted(J))
    return a


def check_hypothesis(WD: WeightedDigraph, limit: int = DEFAULT_LIMIT) -> None:
    weight, shore = lightest_dicut(WD, limit)
    if weight < 2:
        raise PreconditionError(f"dicut of weight {weight} found",
                                witness={"shore": sorted(shore), "weight": weight})
    heavy = WD.heavy_digraph().underlying()
    bad = bridge_components(heavy)
    if len(bad) > 1:
        raise PreconditionError("weight-1 arcs are not weakly bridge-connected",
                                witness={"bridge_components": [sorted(c) for c in bad]})


def contract_cycle_step(WD: WeightedDigraph, cycle: list) -> tuple:
    """Contract the vertices of ``cycle`` (steps ``(arc id, from, to)``).

    Returns ``(child, forward, backward)``: the cycle arcs that agree with the
    traversal direction and those that oppose it.
    """
    D = WD.digraph
    forward, backward = [], []
    verts = set()
    for aid, frm, to in cycle:
        a = D.arc(aid)
        if WD.weight[aid] != 1:
            raise ValueError(f"arc {aid} on the cycle has weight 0")
        if (a.tail, a.head) == (frm, to):
            forward.append(aid)
        elif (a.tail, a.head) == (to, frm):
            backward.append(aid)
        else:
            raise ValueError(f"step {(aid, frm, to)} does not match arc {a}")
        verts.update((frm, to))
    child, _, surviving = contract(D, verts)
    weight = {aid: WD.weight[aid] for aid in surviving}
    return WeightedDigraph(child, weight), forward, backward


def eliminate_vertex_step(WD: WeightedDigraph, v0: int, next_id: int) -> tuple:
    """Delete ``v0`` and join each in-neighbour to each out-neighbour by a weight-0 arc.

    One arc is added per (in-arc, out-arc) pair whose endpoints differ; new ids
    count up from ``next_id``. Returns ``(child, added ids)``.
    """
    D = WD.digraph
    incident = [a for a in D.arcs if v0 in (a.tail, a.head)]
    if any(WD.weight[a.id] == 1 for a in incident):
        raise PreconditionError(f"vertex {v0} is incident to a weight-1 arc", witness=v0)
    ins = sorted({a.tail for a in incident if a.head == v0})
    outs = sorted({a.head for a in incident if a.tail == v0})
    vmap = [v if v < v0 else v - 1 for v in range(D.n)]
    arcs, weight = [], {}
    for a in D.arcs:
        if v0 in (a.tail, a.head):
            continue
        arcs.append(Arc(a.id, vmap[a.tail], vmap[a.head]))
        weight[a.id] = WD.weight[a.id]
    added = []
    for p in ins:
        for q in outs:
            if p == q:
                continue
            arcs.append(Arc(next_id, vmap[p], vmap[q]))
            weight[next_id] = 0
            added.append(next_id)
            next_id += 1
    return WeightedDigraph(Digraph(D.n - 1, tuple(arcs)), weight), added


def _light_vertex(WD: WeightedDigraph) -> Optional[int]:
    touched = set()
    for a in WD.digraph.arcs:
        if WD.weight[a.id] == 1:
            touched.update((a.tail, a.head))
    for v in range(WD.n):
        if v not in touched:
            return v
    return None


def _solve_base(WD: WeightedDigraph, limit: int, max_deviation: int) -> DijoinPair:
    D = WD.digraph
    heavy = WD.heavy_digraph()
    if D.n <= 1:
        return DijoinPair(frozenset(), frozenset())
    inst = GuardedInstance(heavy.underlying(), GuardFamily(D))
    orientation, _ = strong_orient(inst, max_deviation=max_deviation, limit=limit)
    flipped = {a.id for a in heavy.arcs if orientation[a.id] != (a.tail, a.head)}
    kept = {a.id for a in heavy.arcs} - flipped
    return DijoinPair(kept, flipped)


def pack_two_dijoins(WD: WeightedDigraph, limit: int = DEFAULT_LIMIT,
                     max_deviation: int = DEFAULT_MAX_DEVIATION,
                     check_steps: bool = True) -> tuple:
    """Return ``(DijoinPair, steps)`` for an instance meeting the hypothesis."""
    check_hypothesis(WD, limit)
    steps = []
    current = WD
    next_id = max(WD.digraph.arc_ids(), default=-1) + 1
    while True:
        cycle = find_cycle(current.heavy_digraph().underlying())
        if cycle is not None:
            child, forward, backward = contract_cycle_step(current, cycle)
            steps.append(ReductionStep("contract", child, cycle=[s[0] for s in cycle],
                                       forward=forward, backward=backward))
        else:
            v0 = _light_vertex(current)
            if v0 is None or current.n <= 1:
                break
            child, added = eliminate_vertex_step(current, v0, next_id)
            next_id += len(added)
            steps.append(ReductionStep("eliminate", child, vertex=v0, added=added))
        if child.n >= current.n:
            raise ContractError("reduction step did not shrink the instance")
        if check_steps:
            try:
                check_hypothesis(child, limit)
            except PreconditionError as exc:
                log.warning("reduced instance lost the hypothesis: %s", exc)
                raise ContractError("reduction broke the hypothesis", detail=exc.witness) from exc
        current = child

    pair = _solve_base(current, limit, max_deviation)
    steps.append(ReductionStep("base", current))

    first, second = set(pair.first), set(pair.second)
    for step in reversed(steps[:-1]):
        if step.kind == "contract":
            first.update(step.forward)
            second.update(step.backward)
    pair = DijoinPair(first, second)

    heavy = set(WD.heavy)
    if not (pair.first <= heavy and pair.second <= heavy):
        raise ContractError("dijoin uses a weight-0 arc", detail=pair)
    if not (is_dijoin(WD.digraph, pair.first, limit=limit)
            and is_dijoin(WD.digraph, pair.second, limit=limit)):
        raise ContractError("lifted pair is not a pair of dijoins", detail=pair)
    return pair, steps
