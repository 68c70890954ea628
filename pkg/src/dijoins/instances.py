"""Line-oriented instance documents and the built-in instances.

Document grammar (one record per line, ``#`` starts a comment line)::

    dijoins-instance 1
    name <token>
    meta <key> <free text>
    vertex <name>
    demand <vertex> <int>
    arc <tail> <head> <weight> [role=graph-edge|guard-arc] [lower=<int|-inf>] [upper=<int|inf>]

Arc ids are the 0-based positions of the ``arc`` lines. The canonical form
written by :func:`serialize_instance` emits the header, name, meta lines sorted
by key, vertices, nonzero demands in vertex order, then arcs, with optional
fields only when they differ from the defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .families import GuardFamily
from .graphs import Arc, Digraph, UGraph, WeightedDigraph, contract, Edge
from .orientation import GuardedInstance
from .transshipment import TransshipmentProblem

FORMAT_TAG = "dijoins-instance"
FORMAT_VERSION = 1
ROLES = ("graph-edge", "guard-arc")


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, element: Optional[str] = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.element = element


@dataclass(frozen=True)
class ArcRecord:
    tail: str
    head: str
    weight: int
    role: Optional[str] = None
    lower: Optional[int] = 0
    upper: Optional[int] = None


@dataclass
class InstanceDocument:
    name: str
    vertices: list
    arcs: list
    demands: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)
    version: int = FORMAT_VERSION

    def __post_init__(self):
        validate(self)

    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def guarded(self) -> bool:
        return any(a.role is not None for a in self.arcs)

    def weighted_digraph(self) -> WeightedDigraph:
        idx = self.index()
        return WeightedDigraph.from_triples(
            len(self.vertices), [(idx[a.tail], idx[a.head], a.weight) for a in self.arcs])

    def guarded_instance(self) -> GuardedInstance:
        if not self.guarded:
            raise ParseError("document has no arc roles; it is not a guarded instance")
        idx = self.index()
        n = len(self.vertices)
        edges, guards = [], []
        for i, a in enumerate(self.arcs):
            if a.role == "graph-edge":
                edges.append(Edge(i, idx[a.tail], idx[a.head]))
            else:
                guards.append(Arc(i, idx[a.tail], idx[a.head]))
        return GuardedInstance(UGraph(n, tuple(edges)), GuardFamily(Digraph(n, tuple(guards))))

    def transshipment_problem(self) -> TransshipmentProblem:
        idx = self.index()
        D = Digraph(len(self.vertices),
                    tuple(Arc(i, idx[a.tail], idx[a.head]) for i, a in enumerate(self.arcs)))
        b = [0] * len(self.vertices)
        for v, val in self.demands.items():
            b[idx[v]] = val
        lower = {i: a.lower for i, a in enumerate(self.arcs)}
        upper = {i: a.upper for i, a in enumerate(self.arcs)}
        return TransshipmentProblem(D, tuple(b), lower, upper)


def validate(doc: InstanceDocument) -> None:
    if doc.version != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {doc.version}")
    if not doc.name or any(c.isspace() for c in doc.name):
        raise ParseError("name must be a single nonempty token", element=doc.name)
    seen = set()
    for v in doc.vertices:
        if not v or any(c.isspace() for c in v):
            raise ParseError(f"bad vertex name {v!r}", element=v)
        if v in seen:
            raise ParseError(f"duplicate vertex name {v!r}", element=v)
        seen.add(v)
    for v in doc.demands:
        if v not in seen:
            raise ParseError(f"demand for unknown vertex {v!r}", element=v)
    roles = {a.role for a in doc.arcs}
    if None in roles and len(roles) > 1:
        raise ParseError("either every arc has a role or none does")
    for i, a in enumerate(doc.arcs):
        for end in (a.tail, a.head):
            if end not in seen:
                raise ParseError(f"arc {i} refers to unknown vertex {end!r}", element=f"arc {i}")
        if a.tail == a.head:
            raise ParseError(f"arc {i} is a loop", element=f"arc {i}")
        if a.weight not in (0, 1):
            raise ParseError(f"arc {i} has weight {a.weight}; weights must be 0 or 1",
                             element=f"arc {i}")
        if a.role is not None and a.role not in ROLES:
            raise ParseError(f"arc {i} has unknown role {a.role!r}", element=f"arc {i}")
        if a.lower is not None and a.upper is not None and a.lower > a.upper:
            raise ParseError(f"arc {i} has lower bound above upper bound", element=f"arc {i}")


def _bound(text: str, line: int, infinite: str) -> Optional[int]:
    if text == infinite:
        return None
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"bad bound {text!r}", line) from None


def parse_instance(text: str) -> InstanceDocument:
    header_seen = False
    name = None
    vertices, arcs, meta, demands = [], [], {}, {}
    version = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        key = parts[0]
        if not header_seen:
            if key != FORMAT_TAG or len(parts) != 2:
                raise ParseError(f"expected '{FORMAT_TAG} <version>' header", lineno)
            try:
                version = int(parts[1])
            except ValueError:
                raise ParseError("version must be an integer", lineno) from None
            header_seen = True
            continue
        if key == "name" and len(parts) == 2:
            name = parts[1]
        elif key == "meta" and len(parts) >= 2:
            meta[parts[1]] = line.split(None, 2)[2] if len(parts) > 2 else ""
        elif key == "vertex" and len(parts) == 2:
            vertices.append(parts[1])
        elif key == "demand" and len(parts) == 3:
            try:
                demands[parts[1]] = int(parts[2])
            except ValueError:
                raise ParseError(f"bad demand {parts[2]!r}", lineno) from None
        elif key == "arc" and len(parts) >= 4:
            try:
                weight = int(parts[3])
            except ValueError:
                raise ParseError(f"bad weight {parts[3]!r}", lineno) from None
            opts = {"role": None, "lower": 0, "upper": None}
            for token in parts[4:]:
                k, sep, val = token.partition("=")
                if not sep or k not in opts:
                    raise ParseError(f"bad arc option {token!r}", lineno)
                if k == "role":
                    opts["role"] = val
                elif k == "lower":
                    opts["lower"] = _bound(val, lineno, "-inf")
                else:
                    opts["upper"] = _bound(val, lineno, "inf")
            arcs.append(ArcRecord(parts[1], parts[2], weight, **opts))
        else:
            raise ParseError(f"unrecognised record {line!r}", lineno)
    if not header_seen:
        raise ParseError("empty document")
    if name is None:
        raise ParseError("missing name record")
    return InstanceDocument(name, vertices, arcs, demands, meta, version)


def serialize_instance(doc: InstanceDocument) -> str:
    lines = [f"{FORMAT_TAG} {doc.version}", f"name {doc.name}"]
    for key in sorted(doc.meta):
        lines.append(f"meta {key} {doc.meta[key]}".rstrip())
    lines += [f"vertex {v}" for v in doc.vertices]
    for v in doc.vertices:
        if doc.demands.get(v, 0):
            lines.append(f"demand {v} {doc.demands[v]}")
    for a in doc.arcs:
        fields = [f"arc {a.tail} {a.head} {a.weight}"]
        if a.role is not None:
            fields.append(f"role={a.role}")
        if a.lower != 0:
            fields.append("lower=-inf" if a.lower is None else f"lower={a.lower}")
        if a.upper is not None:
            fields.append(f"upper={a.upper}")
        lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"


def document_from_weighted(name: str, WD: WeightedDigraph, vertex_names=None,
                           meta: Optional[dict] = None) -> InstanceDocument:
    names = vertex_names or [str(v) for v in range(WD.n)]
    arcs = [ArcRecord(names[a.tail], names[a.head], WD.weight[a.id]) for a in WD.digraph.arcs]
    return InstanceDocument(name, list(names), arcs, meta=dict(meta or {}))


# ---------------------------------------------------------------------------
# built-in instances

_RING = [f"A{i}" for i in range(1, 7)] + [f"B{i}" for i in range(1, 7)]
# spoke pairs carry an inner dashed arc, a solid diagonal and an outer dashed arc
_SPOKES = [(1, 6), (3, 2), (5, 4)]
# rim pairs carry a solid inner and a solid outer arc
_RIMS = [(5, 6), (3, 4), (1, 2)]


def _ring_arcs() -> list:
    """``(tail, head, weight)`` for the twelve-vertex ring digraph."""
    arcs = [(f"A{i}", f"B{i}", 0) for i in range(1, 7)]
    for i, j in _SPOKES:
        arcs += [(f"A{i}", f"A{j}", 0), (f"A{i}", f"B{j}", 1), (f"B{i}", f"B{j}", 0)]
    for i, j in _RIMS:
        arcs += [(f"A{i}", f"A{j}", 1), (f"B{i}", f"B{j}", 1)]
    return arcs


def _schrijver() -> InstanceDocument:
    arcs = [ArcRecord(t, h, w) for t, h, w in _ring_arcs()]
    return InstanceDocument("schrijver", list(_RING), arcs,
                            meta={"source": "Schrijver 1980 counterexample to the Edmonds-Giles conjecture"})


def _fig1a() -> InstanceDocument:
    arcs = []
    for t, h, w in _ring_arcs():
        role = "graph-edge" if w == 1 else "guard-arc"
        arcs.append(ArcRecord(t, h, w, role=role))
    return InstanceDocument("fig1a", list(_RING), arcs,
                            meta={"source": "disconnected graph with no strong orientation for its guarded family"})


# contracted vertex order is A1..A6 (A3 absorbs B3), B1, B2, B4, B5, B6;
# relabelled so that B6, B1, B2, B4, B5 become 6..10
_APPENDIX_LABEL = [0, 1, 2, 3, 4, 5, 7, 8, 9, 10, 6]

APPENDIX_X = [Fraction(1), Fraction(-1, 2), Fraction(3, 2), Fraction(0), Fraction(1),
              Fraction(-1), Fraction(-1), Fraction(1, 2), Fraction(-1), Fraction(-1),
              Fraction(1, 2)]

# (label, set, printed value)
APPENDIX_TIGHT = [
    ("f1", {0}, 1),
    ("f1", {4}, 1),
    ("f2", {6}, -1),
    ("f2", {8}, -1),
    ("f2", {9}, -1),
    ("f2", {3, 9}, -1),
    ("f2", {1, 2, 3, 8, 9}, -1),
    ("f1", {2, 3, 4, 9, 10}, 2),
    ("f1", {0, 1, 2, 3, 4, 7, 8, 9, 10}, 2),
    ("component", {0, 1, 6, 10}, 0),
    ("component", {2, 3, 4, 5, 7, 8, 9}, 0),
]


def _appendix11() -> InstanceDocument:
    base = _schrijver().weighted_digraph()
    idx = {v: i for i, v in enumerate(_RING)}
    child, _, surviving = contract(base.digraph, {idx["A3"], idx["B3"]})
    names = [str(k) for k in range(child.n)]
    arcs = []
    for a in child.arcs:
        arcs.append(ArcRecord(names[_APPENDIX_LABEL[a.tail]], names[_APPENDIX_LABEL[a.head]],
                              base.weight[a.id]))
    return InstanceDocument("appendix11", names, arcs,
                            meta={"source": "ring digraph with arc A3->B3 contracted"})


def _check_appendix(doc: InstanceDocument) -> None:
    from .graphs import cut_arcs

    WD = doc.weighted_digraph()
    heavy = WD.heavy_digraph()
    for label, U, printed in APPENDIX_TIGHT:
        total = sum(APPENDIX_X[v] for v in U)
        bound = 0 if label == "component" else len(cut_arcs(heavy, U)[0]) - 1
        if not (total == bound == printed):
            raise AssertionError(f"appendix labelling fails on {label} {sorted(U)}: "
                                 f"x={total}, bound={bound}, printed={printed}")


_BUILDERS = {"fig1a": _fig1a, "schrijver": _schrijver, "appendix11": _appendix11}


def builtin(name: str) -> InstanceDocument:
    try:
        doc = _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {sorted(_BUILDERS)}") from None
    _sanity(doc)
    return doc


def builtin_names() -> list:
    return sorted(_BUILDERS)


def _sanity(doc: InstanceDocument) -> None:
    from .graphs import weak_components

    if doc.name == "fig1a":
        edges = [a for a in doc.arcs if a.role == "graph-edge"]
        guards = [a for a in doc.arcs if a.role == "guard-arc"]
        assert len(doc.vertices) == 12 and len(edges) == 9 and len(guards) == 12
        return
    WD = doc.weighted_digraph()
    comps = [c for c in weak_components(WD.heavy_digraph())]
    if doc.name == "schrijver":
        assert WD.n == 12 and len(WD.digraph.arcs) == 21 and len(WD.heavy) == 9
        assert len(comps) == 3
    elif doc.name == "appendix11":
        assert WD.n == 11 and len(comps) == 2
        _check_appendix(doc)
