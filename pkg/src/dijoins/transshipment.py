"""Integral b-transshipments with lower and upper arc bounds.

``solve`` either returns an integral flow or a vertex set ``U`` with
``b(U) > u(out(U)) - l(in(U))``. Bounds may be ``None`` to mean unbounded
(``-inf`` for lower, ``+inf`` for upper). All arithmetic is on Python ints.

The reduction shifts every arc to a base value ``y0`` (zero clamped into its
bounds), then routes the residual demand through a max-flow network where
each arc may move up to ``u - y0`` forward and ``y0 - l`` backward. Unbounded
sides get a finite capacity large enough that no minimum cut can use them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .graphs import Digraph, SetLike, from_mask, to_mask


@dataclass(frozen=True)
class TransshipmentProblem:
    digraph: Digraph
    b: tuple
    lower: dict = None
    upper: dict = None

    def __post_init__(self):
        D = self.digraph
        if len(self.b) != D.n:
            raise ValueError("demand vector must have one entry per vertex")
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        lower = {aid: None for aid in D.arc_ids()}
        upper = dict(lower)
        lower.update(self.lower or {})
        upper.update(self.upper or {})
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        for aid in D.arc_ids():
            lo, hi = lower[aid], upper[aid]
            if lo is not None and hi is not None and lo > hi:
                raise ValueError(f"arc {aid}: lower bound {lo} exceeds upper bound {hi}")


@dataclass(frozen=True)
class TransshipmentResult:
    flow: Optional[dict] = None
    certificate: Optional[frozenset] = None

    @property
    def feasible(self) -> bool:
        return self.flow is not None


def check_condition(P: TransshipmentProblem, U: SetLike) -> bool:
    """Whether ``b(U) <= u(out(U)) - l(in(U))`` holds for ``U``.

    For ``U = V`` the condition is read together with its complement ``U = {}``,
    i.e. it additionally demands ``b(V) = 0``.
    """
    D = P.digraph
    mask = to_mask(U)
    full = (1 << D.n) - 1
    demand = sum(P.b[v] for v in range(D.n) if (mask >> v) & 1)
    if mask == full and D.n > 0:
        return demand == 0
    rhs = 0
    for a in D.arcs:
        t_in = (mask >> a.tail) & 1
        h_in = (mask >> a.head) & 1
        if t_in and not h_in:
            if P.upper[a.id] is None:
                return True
            rhs += P.upper[a.id]
        elif h_in and not t_in:
            if P.lower[a.id] is None:
                return True
            rhs -= P.lower[a.id]
    return demand <= rhs


def verify(P: TransshipmentProblem, y: dict) -> bool:
    D = P.digraph
    if set(y) != set(D.arc_ids()):
        return False
    net = [0] * D.n
    for a in D.arcs:
        val = y[a.id]
        lo, hi = P.lower[a.id], P.upper[a.id]
        if (lo is not None and val < lo) or (hi is not None and val > hi):
            return False
        net[a.tail] += val
        net[a.head] -= val
    return net == list(P.b)


class _FlowNetwork:
    """Dinic max-flow on integer capacities."""

    def __init__(self, n: int):
        self.n = n
        self.head: list = []
        self.cap: list = []
        self.adj = [[] for _ in range(n)]

    def add(self, u: int, v: int, c: int) -> int:
        idx = len(self.head)
        self.head += [v, u]
        self.cap += [c, 0]
        self.adj[u].append(idx)
        self.adj[v].append(idx + 1)
        return idx

    def flow_on(self, idx: int) -> int:
        return self.cap[idx ^ 1]

    def _levels(self, s: int, t: int) -> Optional[list]:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                if self.cap[e] > 0 and level[self.head[e]] < 0:
                    level[self.head[e]] = level[u] + 1
                    queue.append(self.head[e])
        return level if level[t] >= 0 else None

    def _augment(self, s: int, t: int, level: list, it: list) -> int:
        # iterative DFS along the level graph; returns the bottleneck pushed
        path = []
        u = s
        while True:
            if u == t:
                push = min(self.cap[e] for e in path)
                for e in path:
                    self.cap[e] -= push
                    self.cap[e ^ 1] += push
                return push
            while it[u] < len(self.adj[u]):
                e = self.adj[u][it[u]]
                v = self.head[e]
                if self.cap[e] > 0 and level[v] == level[u] + 1:
                    break
                it[u] += 1
            else:
                if not path:
                    return 0
                level[u] = -1
                e = path.pop()
                u = self.head[e ^ 1]
                it[u] += 1
                continue
            e = self.adj[u][it[u]]
            path.append(e)
            u = self.head[e]

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * self.n
            while True:
                pushed = self._augment(s, t, level, it)
                if not pushed:
                    break
                total += pushed

    def reachable(self, s: int) -> set:
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for e in self.adj[u]:
                v = self.head[e]
                if self.cap[e] > 0 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen


def _big(P: TransshipmentProblem) -> int:
    total = 1 + sum(abs(x) for x in P.b)
    for aid in P.digraph.arc_ids():
        for bound in (P.lower[aid], P.upper[aid]):
            if bound is not None:
                total += abs(bound)
    return total


def solve(P: TransshipmentProblem) -> TransshipmentResult:
    D = P.digraph
    n = D.n
    if sum(P.b) != 0:
        return TransshipmentResult(certificate=frozenset(range(n)))
    big = _big(P)
    base = {}
    residual = list(P.b)
    net = _FlowNetwork(n + 2)
    s, t = n, n + 1
    edges = {}
    for a in D.arcs:
        lo = -big if P.lower[a.id] is None else P.lower[a.id]
        hi = big if P.upper[a.id] is None else P.upper[a.id]
        y0 = min(max(0, lo), hi)
        base[a.id] = y0
        residual[a.tail] -= y0
        residual[a.head] += y0
        fwd = net.add(a.tail, a.head, hi - y0)
        bwd = net.add(a.head, a.tail, y0 - lo)
        edges[a.id] = (fwd, bwd)
    supply = 0
    for v in range(n):
        if residual[v] > 0:
            net.add(s, v, residual[v])
            supply += residual[v]
        elif residual[v] < 0:
            net.add(v, t, -residual[v])
    if net.max_flow(s, t) < supply:
        side = net.reachable(s) - {s}
        return TransshipmentResult(certificate=frozenset(side))
    flow = {}
    for a in D.arcs:
        fwd, bwd = edges[a.id]
        flow[a.id] = base[a.id] + net.flow_on(fwd) - net.flow_on(bwd)
    return TransshipmentResult(flow=flow)


def condition_holds_everywhere(P: TransshipmentProblem) -> Union[bool, frozenset]:
    """Exhaustive check of the cut condition; ``True`` or the first violating set."""
    for mask in range(1 << P.digraph.n):
        if not check_condition(P, mask):
            return from_mask(mask)
    return True
