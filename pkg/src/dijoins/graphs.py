"""Directed and undirected multigraphs with stable arc identities.

Vertices are dense integers ``0..n-1``. Vertex subsets are passed around
either as ``frozenset`` objects (public API) or as integer bitmasks (the
enumeration helpers); :func:`to_mask` and :func:`from_mask` convert.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Union

VertexSet = frozenset
SetLike = Union[int, Iterable[int]]


def to_mask(U: SetLike) -> int:
    if isinstance(U, int):
        return U
    mask = 0
    for v in U:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


class Arc(NamedTuple):
    id: int
    tail: int
    head: int


class Edge(NamedTuple):
    id: int
    u: int
    v: int


def _check_endpoints(n: int, kind: str, items) -> None:
    seen = set()
    for item in items:
        a, b = item[1], item[2]
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"{kind} {item.id} has an endpoint outside 0..{n - 1}")
        if a == b:
            raise ValueError(f"{kind} {item.id} is a loop")
        if item.id in seen:
            raise ValueError(f"duplicate {kind} id {item.id}")
        seen.add(item.id)


@dataclass(frozen=True)
class Digraph:
    """Loop-free directed multigraph. Parallel and antiparallel arcs are fine."""

    n: int
    arcs: tuple = ()
    _by_id: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        arcs = tuple(a if isinstance(a, Arc) else Arc(*a) for a in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        _check_endpoints(self.n, "arc", arcs)
        object.__setattr__(self, "_by_id", {a.id: a for a in arcs})

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple]) -> "Digraph":
        return cls(n, tuple(Arc(i, t, h) for i, (t, h) in enumerate(pairs)))

    def arc(self, arc_id: int) -> Arc:
        return self._by_id[arc_id]

    def arc_ids(self) -> list:
        return [a.id for a in self.arcs]

    def has_arc(self, arc_id: int) -> bool:
        return arc_id in self._by_id

    def subgraph(self, arc_ids: Iterable[int]) -> "Digraph":
        keep = set(arc_ids)
        return Digraph(self.n, tuple(a for a in self.arcs if a.id in keep))

    def reversed(self, arc_ids: Optional[Iterable[int]] = None) -> "Digraph":
        """Flip the given arcs (all arcs by default), keeping their ids."""
        flip = set(self._by_id) if arc_ids is None else set(arc_ids)
        return Digraph(self.n, tuple(
            Arc(a.id, a.head, a.tail) if a.id in flip else a for a in self.arcs))

    def underlying(self) -> "UGraph":
        return UGraph(self.n, tuple(Edge(a.id, a.tail, a.head) for a in self.arcs))

    def in_masks(self) -> list:
        """Per vertex, the bitmask of its in-neighbours."""
        pred = [0] * self.n
        for a in self.arcs:
            pred[a.head] |= 1 << a.tail
        return pred

    def out_masks(self) -> list:
        succ = [0] * self.n
        for a in self.arcs:
            succ[a.tail] |= 1 << a.head
        return succ


@dataclass(frozen=True)
class UGraph:
    """Loop-free undirected multigraph."""

    n: int
    edges: tuple = ()

    def __post_init__(self):
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        _check_endpoints(self.n, "edge", edges)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple]) -> "UGraph":
        return cls(n, tuple(Edge(i, u, v) for i, (u, v) in enumerate(pairs)))

    def adjacency(self) -> list:
        """Per vertex, a list of ``(edge id, neighbour)``."""
        adj = [[] for _ in range(self.n)]
        for e in self.edges:
            adj[e.u].append((e.id, e.v))
            adj[e.v].append((e.id, e.u))
        return adj

    def without(self, edge_id: int) -> "UGraph":
        return UGraph(self.n, tuple(e for e in self.edges if e.id != edge_id))


def cut_arcs(D: Digraph, U: SetLike) -> tuple:
    """Return ``(outgoing ids, incoming ids)`` of the vertex set ``U``."""
    mask = to_mask(U)
    out, inc = [], []
    for a in D.arcs:
        t_in = (mask >> a.tail) & 1
        h_in = (mask >> a.head) & 1
        if t_in and not h_in:
            out.append(a.id)
        elif h_in and not t_in:
            inc.append(a.id)
    return out, inc


def cut_edges(G: UGraph, U: SetLike) -> list:
    mask = to_mask(U)
    return [e.id for e in G.edges if ((mask >> e.u) & 1) != ((mask >> e.v) & 1)]


def reach(n: int, start: int, nbrs: list) -> int:
    seen = 1 << start
    stack = [start]
    while stack:
        v = stack.pop()
        new = nbrs[v] & ~seen
        seen |= new
        while new:
            low = new & -new
            stack.append(low.bit_length() - 1)
            new ^= low
    return seen


def strongly_connected(D: Digraph) -> bool:
    if D.n <= 1:
        return True
    full = (1 << D.n) - 1
    return (reach(D.n, 0, D.out_masks()) == full
            and reach(D.n, 0, D.in_masks()) == full)


def _components(n: int, pairs: Iterable[tuple]) -> list:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return [frozenset(g) for _, g in sorted(groups.items())]


def weak_components(D: Digraph) -> list:
    """Vertex sets of the weakly connected components, ordered by least vertex."""
    return _components(D.n, ((a.tail, a.head) for a in D.arcs))


def components(G: UGraph) -> list:
    return _components(G.n, ((e.u, e.v) for e in G.edges))


def is_connected(G: UGraph) -> bool:
    return len(components(G)) <= 1


def bridges(G: UGraph) -> set:
    """Bridge edge ids via an iterative lowpoint DFS.

    Only the edge used to enter a vertex is excluded when computing its
    lowpoint, so parallel edges are never reported.
    """
    adj = G.adjacency()
    order = [-1] * G.n
    low = [0] * G.n
    found = set()
    counter = 0
    for root in range(G.n):
        if order[root] != -1:
            continue
        order[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for eid, w in it:
                if eid == via:
                    continue
                if order[w] == -1:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], order[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > order[parent]:
                    found.add(via)
    return found


def is_bridge_connected(G: UGraph) -> bool:
    return len(bridge_components(G)) <= 1


def bridge_components(G: UGraph) -> list:
    """Connected components (as vertex sets) that contain at least one bridge."""
    br = bridges(G)
    if not br:
        return []
    ends = {}
    for e in G.edges:
        if e.id in br:
            ends[e.id] = e.u
    out = []
    for comp in components(G):
        if any(u in comp for u in ends.values()):
            out.append(comp)
    return out


def find_cycle(G: UGraph) -> Optional[list]:
    """A simple cycle as traversal steps ``(edge id, from, to)``, or ``None``.

    Edges are scanned in id order; the first edge that closes a cycle with the
    forest built so far determines the result, so the choice is deterministic.
    Two parallel edges form a cycle of length two.
    """
    adj = [[] for _ in range(G.n)]
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in sorted(G.edges, key=lambda e: e.id):
        ru, rv = find(e.u), find(e.v)
        if ru != rv:
            parent[ru] = rv
            adj[e.u].append((e.id, e.v))
            adj[e.v].append((e.id, e.u))
            continue
        # forest path from e.v back to e.u, then close with e
        prev = {e.v: None}
        queue = deque([e.v])
        while queue:
            x = queue.popleft()
            if x == e.u:
                break
            for eid, y in adj[x]:
                if y not in prev:
                    prev[y] = (eid, x)
                    queue.append(y)
        steps = []
        x = e.u
        while prev[x] is not None:
            eid, y = prev[x]
            steps.append((eid, y, x))
            x = y
        steps.reverse()
        steps.append((e.id, e.u, e.v))
        return steps
    return None


def contract(D: Digraph, S: SetLike) -> tuple:
    """Merge ``S`` into a single vertex.

    Returns ``(child, vertex_map, surviving_arc_ids)``. Surviving vertices
    keep their relative order; the merged vertex takes the slot of the least
    member of ``S``. Arcs inside ``S`` disappear, all others keep their ids.
    """
    members = sorted(from_mask(to_mask(S)))
    if not members:
        raise ValueError("cannot contract an empty set")
    rep = members[0]
    inside = set(members)
    vmap = []
    nxt = 0
    slot = {}
    for v in range(D.n):
        if v in inside and v != rep:
            continue
        slot[v] = nxt
        nxt += 1
    for v in range(D.n):
        vmap.append(slot[rep] if v in inside else slot[v])
    arcs = []
    for a in D.arcs:
        t, h = vmap[a.tail], vmap[a.head]
        if t != h:
            arcs.append(Arc(a.id, t, h))
    child = Digraph(nxt, tuple(arcs))
    return child, vmap, [a.id for a in arcs]


@dataclass(frozen=True)
class WeightedDigraph:
    """Digraph with a 0/1 weight on every arc."""

    digraph: Digraph
    weight: dict

    def __post_init__(self):
        ids = set(self.digraph.arc_ids())
        if set(self.weight) != ids:
            raise ValueError("weights must be given for exactly the arcs of the digraph")
        for aid, w in self.weight.items():
            if w not in (0, 1):
                raise ValueError(f"arc {aid} has weight {w!r}; weights must be 0 or 1")

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[tuple]) -> "WeightedDigraph":
        triples = list(triples)
        D = Digraph(n, tuple(Arc(i, t, h) for i, (t, h, _) in enumerate(triples)))
        return cls(D, {i: w for i, (_, _, w) in enumerate(triples)})

    @property
    def n(self) -> int:
        return self.digraph.n

    @property
    def heavy(self) -> list:
        """Ids of the weight-1 arcs."""
        return [a.id for a in self.digraph.arcs if self.weight[a.id] == 1]

    def heavy_digraph(self) -> Digraph:
        return self.digraph.subgraph(self.heavy)


def orientation_digraph(n: int, orientation: dict) -> Digraph:
    """Digraph whose arcs are the oriented edges; ``orientation`` maps edge id to (tail, head)."""
    return Digraph(n, tuple(Arc(eid, t, h) for eid, (t, h) in sorted(orientation.items())))


def orientation_of(D: Digraph) -> dict:
    return {a.id: (a.tail, a.head) for a in D.arcs}
