"""Strong orientations of a connected graph for a guarded crossing family.

Pipeline: fix a reference orientation ``D`` of ``G``; compute the
half-integral point ``x'`` (half the out-minus-in degree); find an integral
``x`` with ``x(V) = 0`` and ``x(U) <= |out_D(U)| - 1`` on the family and on the
complement family; lift ``x`` to an integral transshipment ``y`` on ``D``;
round ``y`` to 0/1 and flip the arcs at 1.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ContractError, PreconditionError
from .families import (DEFAULT_LIMIT, GuardFamily, check_degree_condition,
                       family_masks)
from .graphs import (Arc, Digraph, UGraph, components, from_mask,
                     orientation_digraph, strongly_connected)
from . import transshipment

log = logging.getLogger(__name__)

DEFAULT_MAX_DEVIATION = 4
FALLBACK_MAX_EDGES = 20


def reference_orientation(G: UGraph) -> Digraph:
    """Each edge oriented from its lower to its higher endpoint."""
    return Digraph(G.n, tuple(Arc(e.id, min(e.u, e.v), max(e.u, e.v)) for e in G.edges))


@dataclass(frozen=True)
class GuardedInstance:
    graph: UGraph
    guards: GuardFamily
    reference: Digraph = None

    def __post_init__(self):
        if self.graph.n != self.guards.n:
            raise ValueError("graph and guard digraph must have the same vertex count")
        if self.reference is None:
            object.__setattr__(self, "reference", reference_orientation(self.graph))
        ref = {a.id: frozenset((a.tail, a.head)) for a in self.reference.arcs}
        if ref != {e.id: frozenset((e.u, e.v)) for e in self.graph.edges}:
            raise ValueError("reference digraph must orient exactly the edges of the graph")

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass
class SolveTrace:
    x_prime: list
    x_bar: list = None
    y_bar: dict = None
    y_star: dict = None
    flipped: list = field(default_factory=list)
    orientation: dict = None
    method: str = ""
    deviation: Optional[int] = None


def compute_x_prime(D: Digraph) -> list:
    x = [Fraction(0)] * D.n
    half = Fraction(1, 2)
    for a in D.arcs:
        x[a.tail] += half
        x[a.head] -= half
    return x


def _out_count(D: Digraph, mask: int) -> int:
    return sum(1 for a in D.arcs if (mask >> a.tail) & 1 and not (mask >> a.head) & 1)


def bound_constraints(inst: GuardedInstance, limit: int = DEFAULT_LIMIT) -> list:
    """``(side, mask, bound)`` for every member of both families."""
    full = (1 << inst.n) - 1
    out = []
    members = family_masks(inst.guards, limit)
    for mask in members:
        out.append((1, mask, _out_count(inst.reference, mask) - 1))
    for mask in members:
        comp = full & ~mask
        out.append((2, comp, _out_count(inst.reference, comp) - 1))
    return out


def check_x_feasible(x, inst: GuardedInstance, limit: int = DEFAULT_LIMIT,
                     constraints: Optional[list] = None) -> Optional[tuple]:
    """``None`` if ``x`` is feasible; else ``(side, U)`` with side 0 for the sum equation."""
    if sum(x) != 0:
        return 0, frozenset(range(inst.n))
    if constraints is None:
        constraints = bound_constraints(inst, limit)
    for side, mask, bound in constraints:
        total = sum(x[v] for v in range(inst.n) if (mask >> v) & 1)
        if total > bound:
            return side, from_mask(mask)
    return None


def _search_box(n: int, x_prime: list, constraints: list, radius: int) -> Optional[list]:
    choices = []
    for v in range(n):
        lo = math.ceil(x_prime[v] - radius)
        hi = math.floor(x_prime[v] + radius)
        vals = sorted(range(lo, hi + 1), key=lambda c: (abs(c - x_prime[v]), c))
        choices.append(vals)
    lows = [min(c) for c in choices]
    highs = [max(c) for c in choices]
    # suffix sums of the box, for the x(V) = 0 equation
    lo_suffix = [0] * (n + 1)
    hi_suffix = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        lo_suffix[v] = lo_suffix[v + 1] + lows[v]
        hi_suffix[v] = hi_suffix[v + 1] + highs[v]

    masks = [m for _, m, _ in constraints]
    bounds = [b for _, _, b in constraints]
    touching = [[] for _ in range(n)]
    for c, m in enumerate(masks):
        for v in range(n):
            if (m >> v) & 1:
                touching[v].append(c)
    # rest_low[c][d]: least contribution of members of c with index > d
    rest_low = []
    for m in masks:
        row = [0] * (n + 1)
        acc = 0
        for v in range(n - 1, -1, -1):
            row[v] = acc
            if (m >> v) & 1:
                acc += lows[v]
        row[n] = 0
        rest_low.append((acc, row))
    for c, (acc, _) in enumerate(rest_low):
        if acc > bounds[c]:
            return None

    partial = [0] * len(masks)
    x = [0] * n

    def descend(v: int, prefix: int) -> bool:
        if v == n:
            return prefix == 0
        for val in choices[v]:
            rest = prefix + val
            if not (rest + lo_suffix[v + 1] <= 0 <= rest + hi_suffix[v + 1]):
                continue
            ok = True
            for c in touching[v]:
                partial[c] += val
            for c in touching[v]:
                if partial[c] + rest_low[c][1][v] > bounds[c]:
                    ok = False
                    break
            if ok:
                x[v] = val
                if descend(v + 1, rest):
                    return True
            for c in touching[v]:
                partial[c] -= val
        return False

    if descend(0, 0):
        return list(x)
    return None


def find_integral_x(inst: GuardedInstance, max_deviation: int = DEFAULT_MAX_DEVIATION,
                    limit: int = DEFAULT_LIMIT, constraints: Optional[list] = None,
                    ) -> tuple:
    """Integral ``x`` satisfying the two-sided bound system, and the radius used.

    The all-zero vector is tried first (it is feasible exactly when the
    reference orientation is already strong). Otherwise boxes of radius
    1, 2, 4, ... around ``x'`` are searched depth-first, taking per-vertex
    values nearest to ``x'`` first.
    """
    if constraints is None:
        constraints = bound_constraints(inst, limit)
    n = inst.n
    if all(b >= 0 for _, _, b in constraints):
        return [0] * n, 0
    x_prime = compute_x_prime(inst.reference)
    radius = 1
    while radius <= max_deviation:
        found = _search_box(n, x_prime, constraints, radius)
        if found is not None:
            return found, radius
        radius *= 2
    raise ContractError(f"no integral point within deviation {max_deviation} of x'",
                        detail={"max_deviation": max_deviation})


def lift_to_y(D: Digraph, x_bar) -> dict:
    result = transshipment.solve(transshipment.TransshipmentProblem(D, tuple(x_bar)))
    if not result.feasible:
        raise PreconditionError("demand is unbalanced on a weak component",
                                witness=sorted(result.certificate))
    return result.flow


def round_binary(y_bar: dict) -> dict:
    return {aid: 1 if val >= 1 else 0 for aid, val in y_bar.items()}


def covering_violation(D: Digraph, masks, y: dict) -> Optional[int]:
    """First mask whose covering inequality fails under the 0/1 (or integral) ``y``.

    Inequality: sum of ``y`` on entering arcs plus sum of ``1 - y`` on leaving
    arcs is at least one.
    """
    for mask in masks:
        total = 0
        for a in D.arcs:
            t_in = (mask >> a.tail) & 1
            h_in = (mask >> a.head) & 1
            if h_in and not t_in:
                total += y[a.id]
            elif t_in and not h_in:
                total += 1 - y[a.id]
        if total < 1:
            return mask
    return None


def _fallback_flip_search(inst: GuardedInstance, masks: list) -> Optional[dict]:
    ids = inst.reference.arc_ids()
    for bits in itertools.product((0, 1), repeat=len(ids)):
        y = dict(zip(ids, bits))
        if covering_violation(inst.reference, masks, y) is None:
            return y
    return None


def _divergence(D: Digraph, y: dict) -> list:
    x = [0] * D.n
    for a in D.arcs:
        x[a.tail] += y[a.id]
        x[a.head] -= y[a.id]
    return x


def verify_strong_orientation(orientation: dict, F: GuardFamily, method: str = "both",
                              limit: int = DEFAULT_LIMIT) -> bool:
    """Every family member gets an arc in each direction.

    ``method`` is ``"enumerate"`` (walk the family), ``"connectivity"``
    (guards plus orientation, and guards plus reversed orientation, are both
    strongly connected) or ``"both"``, which raises if the two disagree.
    """
    n = F.n
    oriented = orientation_digraph(n, orientation)
    results = []
    if method in ("enumerate", "both"):
        ok = True
        for mask in family_masks(F, limit):
            has_out = has_in = False
            for a in oriented.arcs:
                t_in = (mask >> a.tail) & 1
                h_in = (mask >> a.head) & 1
                has_out = has_out or (t_in and not h_in)
                has_in = has_in or (h_in and not t_in)
            if not (has_out and has_in):
                ok = False
                break
        results.append(ok)
    if method in ("connectivity", "both"):
        guard_arcs = tuple(Arc(("guard", a.id), a.tail, a.head) for a in F.guard.arcs)
        forward = Digraph(n, guard_arcs + oriented.arcs)
        backward = Digraph(n, guard_arcs + oriented.reversed().arcs)
        results.append(strongly_connected(forward) and strongly_connected(backward))
    if not results:
        raise ValueError(f"unknown verification method {method!r}")
    if len(set(results)) > 1:
        raise ContractError("verification methods disagree", detail=results)
    return results[0]


def check_hypothesis(inst: GuardedInstance, limit: int = DEFAULT_LIMIT) -> None:
    comps = components(inst.graph)
    if len(comps) > 1:
        raise PreconditionError("graph is not connected",
                                witness=[sorted(c) for c in comps])
    bad = check_degree_condition(inst.graph, inst.guards, limit)
    if bad is not None:
        raise PreconditionError("a family member is crossed by fewer than two edges",
                                witness=sorted(bad))


def strong_orient(inst: GuardedInstance, max_deviation: int = DEFAULT_MAX_DEVIATION,
                  limit: int = DEFAULT_LIMIT) -> tuple:
    """Return ``(orientation, trace)``; ``orientation`` maps edge id to (tail, head)."""
    check_hypothesis(inst, limit)
    D = inst.reference
    constraints = bound_constraints(inst, limit)
    masks = [m for _, m, _ in constraints]

    trace = SolveTrace(x_prime=compute_x_prime(D))
    if check_x_feasible(trace.x_prime, inst, constraints=constraints) is not None:
        raise ContractError("half-integral seed violates the bound system")

    try:
        trace.x_bar, trace.deviation = find_integral_x(inst, max_deviation, limit, constraints)
        trace.method = "zero" if trace.deviation == 0 else "search"
    except ContractError:
        # worth keeping: no instance has needed more than deviation 1 so far
        log.warning("integral search exhausted at deviation %d; edges %s, guards %s",
                    max_deviation, [tuple(e[1:]) for e in inst.graph.edges],
                    [tuple(a[1:]) for a in inst.guards.guard.arcs])
        if len(D.arcs) > FALLBACK_MAX_EDGES:
            raise
        y = _fallback_flip_search(inst, masks)
        if y is None:
            raise ContractError("no 0/1 solution of the covering system exists")
        trace.x_bar = _divergence(D, y)
        trace.method = "fallback"

    if check_x_feasible(trace.x_bar, inst, constraints=constraints) is not None:
        raise ContractError("integral point violates the bound system", detail=trace.x_bar)
    trace.y_bar = lift_to_y(D, trace.x_bar)
    if _divergence(D, trace.y_bar) != list(trace.x_bar):
        raise ContractError("transshipment does not balance x")
    trace.y_star = round_binary(trace.y_bar)
    bad = covering_violation(D, masks, trace.y_star)
    if bad is not None:
        raise ContractError("rounded vector violates the covering system",
                            detail=sorted(from_mask(bad)))
    trace.flipped = sorted(aid for aid, bit in trace.y_star.items() if bit)
    flipped = D.reversed(trace.flipped)
    trace.orientation = {a.id: (a.tail, a.head) for a in flipped.arcs}
    if not verify_strong_orientation(trace.orientation, inst.guards, limit=limit):
        raise ContractError("final orientation is not strong for the family")
    return trace.orientation, trace
