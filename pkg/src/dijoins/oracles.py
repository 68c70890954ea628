"""Brute-force oracles, the polytope-vertex certificate, and strengthening sets.

Everything here enumerates: orientations, subsets of weight-1 arcs, vertex
subsets, arc partitions. Results are the first hit in a fixed enumeration
order, so they are deterministic regardless of worker count.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import SizeLimitError
from .families import DEFAULT_LIMIT, GuardFamily, family_masks
from .graphs import (Digraph, UGraph, WeightedDigraph, reach, from_mask,
                     to_mask, weak_components)
from .linalg import rational_rank
from .packing import DijoinPair, enumerate_dicuts

MAX_BRUTE_EDGES = 20


def _chunks(total: int, parts: int) -> list:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(lo, min(total, lo + step)) for lo in range(0, total, step)]


def _first_hit(worker, args: tuple, total: int, parallel: int) -> Optional[int]:
    if parallel <= 1 or total < 1024:
        return worker(args, 0, total)
    ranges = _chunks(total, parallel)
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        futures = [pool.submit(worker, args, lo, hi) for lo, hi in ranges]
        hits = [f.result() for f in futures]
    found = [h for h in hits if h is not None]
    return min(found) if found else None


def _orientation_worker(args: tuple, lo: int, hi: int) -> Optional[int]:
    n, edges, guard_out, guard_in = args
    full = (1 << n) - 1
    for code in range(lo, hi):
        out = list(guard_out)
        inn = list(guard_in)
        rout = list(guard_out)
        rinn = list(guard_in)
        for j, (u, v) in enumerate(edges):
            if (code >> j) & 1:
                u, v = v, u
            out[u] |= 1 << v
            inn[v] |= 1 << u
            rout[v] |= 1 << u
            rinn[u] |= 1 << v
        if n <= 1 or (reach(n, 0, out) == full and reach(n, 0, inn) == full
                      and reach(n, 0, rout) == full and reach(n, 0, rinn) == full):
            return code
    return None


def brute_force_strong_orientation(G: UGraph, F: GuardFamily,
                                   parallel: int = 1) -> Optional[dict]:
    """First of the ``2**|E|`` orientations that is strong for the family.

    Orientation number ``k`` reverses edge ``j`` (in id order) iff bit ``j`` of
    ``k`` is set; edges are otherwise taken as stored.
    """
    edges = sorted(G.edges, key=lambda e: e.id)
    if len(edges) > MAX_BRUTE_EDGES or G.n > MAX_BRUTE_EDGES:
        raise SizeLimitError(f"{len(edges)} edges on {G.n} vertices is too many to enumerate")
    args = (G.n, [(e.u, e.v) for e in edges], F.guard.out_masks(), F.guard.in_masks())
    code = _first_hit(_orientation_worker, args, 1 << len(edges), parallel)
    if code is None:
        return None
    result = {}
    for j, e in enumerate(edges):
        result[e.id] = (e.v, e.u) if (code >> j) & 1 else (e.u, e.v)
    return result


def _split_worker(args: tuple, lo: int, hi: int) -> Optional[int]:
    full, dicuts = args
    for code in range(lo, hi):
        rest = full & ~code
        if all(d & code and d & rest for d in dicuts):
            return code
    return None


def brute_force_two_dijoins(WD: WeightedDigraph, limit: int = DEFAULT_LIMIT,
                            parallel: int = 1) -> Optional[DijoinPair]:
    """Search all splits of the weight-1 arcs into two sets that each meet every dicut."""
    heavy = WD.heavy
    if len(heavy) > MAX_BRUTE_EDGES:
        raise SizeLimitError(f"{len(heavy)} weight-1 arcs is too many to enumerate")
    index = {aid: j for j, aid in enumerate(heavy)}
    dicuts = []
    for _, arcs in enumerate_dicuts(WD.digraph, limit):
        dicuts.append(to_mask(index[aid] for aid in arcs if aid in index))
    full = (1 << len(heavy)) - 1
    code = _first_hit(_split_worker, (full, dicuts), 1 << len(heavy), parallel)
    if code is None:
        return None
    first = {aid for aid, j in index.items() if (code >> j) & 1}
    return DijoinPair(first, set(heavy) - first)


# ---------------------------------------------------------------------------
# polytope vertex certificate

@dataclass
class PolytopeVertexReport:
    feasible: bool
    violation: Optional[dict] = None
    tight: list = field(default_factory=list)
    claims: list = field(default_factory=list)
    claims_verified: bool = False
    claimed_rank: Optional[int] = None
    rank: Optional[int] = None
    fractional: list = field(default_factory=list)
    verdict: str = ""


def _out_arcs(D: Digraph, mask: int) -> int:
    return sum(1 for a in D.arcs if (mask >> a.tail) & 1 and not (mask >> a.head) & 1)


def _row(n: int, mask: int) -> list:
    return [1 if (mask >> v) & 1 else 0 for v in range(n)]


def verify_polytope_vertex(WD: WeightedDigraph, x, claimed: Optional[list] = None,
                           limit: int = 16) -> PolytopeVertexReport:
    """Check that ``x`` lies on the two-component bound polytope and whether it is a vertex.

    The polytope: ``x(K) = 0`` for every weak component ``K`` of the weight-1
    arcs; ``x(U) <= |out_1(U)| - 1`` for every dicut shore ``U`` (label
    ``"f1"``) and every complement of one (label ``"f2"``), where ``out_1``
    counts weight-1 arcs. ``claimed`` lists ``(label, set)`` pairs with label
    ``"f1"``, ``"f2"`` or ``"component"``.
    """
    D = WD.digraph
    n = D.n
    if n > limit:
        raise SizeLimitError(f"ground set of size {n} exceeds limit {limit}")
    x = [Fraction(v) for v in x]
    if len(x) != n:
        raise ValueError("x needs one coordinate per vertex")
    heavy = WD.heavy_digraph()
    full = (1 << n) - 1
    comps = [to_mask(c) for c in weak_components(heavy)]
    c1 = family_masks(GuardFamily(D), limit)
    constraints = [("component", m, 0) for m in comps]
    constraints += [("f1", m, _out_arcs(heavy, m) - 1) for m in c1]
    constraints += [("f2", full & ~m, _out_arcs(heavy, full & ~m) - 1) for m in c1]

    def value(mask):
        return sum((x[v] for v in range(n) if (mask >> v) & 1), Fraction(0))

    report = PolytopeVertexReport(feasible=True)
    report.fractional = [v for v in range(n) if x[v].denominator != 1]
    for label, mask, bound in constraints:
        lhs = value(mask)
        bad = lhs != bound if label == "component" else lhs > bound
        if bad:
            report.feasible = False
            report.violation = {"label": label, "set": sorted(from_mask(mask)),
                                "value": lhs, "bound": bound}
            report.verdict = "infeasible"
            return report
        if lhs == bound:
            report.tight.append((label, from_mask(mask)))

    lookup = {(label, mask): bound for label, mask, bound in constraints}
    claim_rows = []
    all_ok = True
    for label, U in claimed or []:
        mask = to_mask(U)
        bound = lookup.get((label, mask))
        lhs = value(mask)
        ok = bound is not None and lhs == bound
        all_ok = all_ok and ok
        report.claims.append({"label": label, "set": sorted(from_mask(mask)), "value": lhs,
                              "bound": bound, "member": bound is not None, "tight": ok})
        claim_rows.append(_row(n, mask))
    report.claims_verified = bool(claimed) and all_ok
    if claim_rows:
        report.claimed_rank = rational_rank(claim_rows)
    report.rank = rational_rank([_row(n, to_mask(U)) for _, U in report.tight]) if report.tight else 0
    if report.rank == n:
        report.verdict = "fractional vertex" if report.fractional else "vertex"
    else:
        report.verdict = "not a vertex"
    return report


# ---------------------------------------------------------------------------
# strengthening sets

def _flip_masks(D: Digraph, J: set) -> tuple:
    out = [0] * D.n
    inn = [0] * D.n
    for a in D.arcs:
        t, h = (a.head, a.tail) if a.id in J else (a.tail, a.head)
        out[t] |= 1 << h
        inn[h] |= 1 << t
    return out, inn


def is_strengthening_set(D: Digraph, J, F: Optional[GuardFamily] = None,
                         limit: int = DEFAULT_LIMIT) -> bool:
    """After flipping ``J``: strongly connected, or (with ``F``) every member has an out-arc."""
    J = set(J)
    if F is None:
        if D.n <= 1:
            return True
        out, inn = _flip_masks(D, J)
        full = (1 << D.n) - 1
        return reach(D.n, 0, out) == full and reach(D.n, 0, inn) == full
    flipped = D.reversed(J)
    for mask in family_masks(F, limit):
        if not any((mask >> a.tail) & 1 and not (mask >> a.head) & 1 for a in flipped.arcs):
            return False
    return True


def strengthening_hypothesis(D: Digraph, tau: int, F: Optional[GuardFamily] = None,
                             limit: int = DEFAULT_LIMIT) -> Optional[frozenset]:
    """First set breaking the hypothesis, or ``None``.

    Plain variant: every dicut has at least ``tau`` arcs. Family variant: ``D``
    weakly connected and ``|in(U)| + (tau - 1)|out(U)| >= tau`` on the family.
    """
    if F is None:
        for U, arcs in enumerate_dicuts(D, limit):
            if len(arcs) < tau:
                return U
        return None
    comps = weak_components(D)
    if len(comps) > 1:
        return comps[0]
    for mask in family_masks(F, limit):
        out = sum(1 for a in D.arcs if (mask >> a.tail) & 1 and not (mask >> a.head) & 1)
        inc = sum(1 for a in D.arcs if (mask >> a.head) & 1 and not (mask >> a.tail) & 1)
        if inc + (tau - 1) * out < tau:
            return from_mask(mask)
    return None


def brute_force_strengthening_partition(D: Digraph, tau: int, F: Optional[GuardFamily] = None,
                                        budget: int = 3 ** 12,
                                        limit: int = DEFAULT_LIMIT) -> Optional[list]:
    """Partition of the arcs into ``tau`` strengthening sets (parts may be empty), or ``None``."""
    if tau < 1:
        raise ValueError("tau must be positive")
    ids = D.arc_ids()
    m = len(ids)
    if tau ** m > budget:
        raise SizeLimitError(f"{tau}**{m} partitions exceeds budget {budget}")
    strong = [is_strengthening_set(D, {ids[j] for j in range(m) if (code >> j) & 1}, F, limit)
              for code in range(1 << m)]

    def split(rest: int, parts: int) -> Optional[list]:
        if parts == 1:
            return [rest] if strong[rest] else None
        sub = rest
        while True:
            if strong[sub]:
                tail = split(rest & ~sub, parts - 1)
                if tail is not None:
                    return [sub] + tail
            if sub == 0:
                return None
            sub = (sub - 1) & rest

    found = split((1 << m) - 1, tau)
    if found is None:
        return None
    return [sorted(ids[j] for j in range(m) if (code >> j) & 1) for code in found]


def gadget_transform(D: Digraph, tau: int) -> Digraph:
    """Replace each arc ``(u, v)`` by ``(u, t)`` and ``tau - 1`` copies of ``(v, t)``.

    The new vertex for the ``k``-th arc (in stored order) is ``D.n + k``.
    """
    if tau < 2:
        raise ValueError("tau must be at least 2")
    arcs = []
    for k, a in enumerate(D.arcs):
        t = D.n + k
        arcs.append((a.tail, t))
        arcs.extend([(a.head, t)] * (tau - 1))
    return Digraph.from_pairs(D.n + len(D.arcs), arcs)


def gadget_partition(D: Digraph, tau: int, packing: list) -> list:
    """Map dijoins of the gadget digraph back to arc sets of ``D``.

    Part ``i`` holds the arcs ``(u, v)`` whose gadget arc ``(u, t)`` lies in
    the ``i``-th dijoin.
    """
    first_arc = {}
    pos = 0
    for k, a in enumerate(D.arcs):
        first_arc[pos] = a.id
        pos += tau
    return [sorted(first_arc[g] for g in J if g in first_arc) for J in packing]


def gadget_packings(D: Digraph, tau: int):
    """Yield every packing of ``tau`` disjoint dijoins of the gadget digraph.

    Each new vertex is the head of exactly ``tau`` arcs and the tail of none,
    so in a packing each dijoin takes exactly one of them.
    """
    from .packing import is_dijoin

    G = gadget_transform(D, tau)
    groups = [list(range(k * tau, (k + 1) * tau)) for k in range(len(D.arcs))]
    for choice in itertools.product(itertools.permutations(range(tau)), repeat=len(groups)):
        parts = [set() for _ in range(tau)]
        for group, perm in zip(groups, choice):
            for arc_id, part in zip(group, perm):
                parts[part].add(arc_id)
        if all(is_dijoin(G, J, method="reversal") for J in parts):
            yield [sorted(J) for J in parts]
