"""Command-line interface.

Every command prints one JSON certificate on stdout. Exit status 0 means a
verdict was computed (negative verdicts included), 1 means bad input or a
failed precondition, 2 means an internal contract failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import oracles, packing
from .errors import ContractError, PreconditionError, SizeLimitError
from .families import check_degree_condition, is_crossing_family
from .instances import (APPENDIX_TIGHT, APPENDIX_X, InstanceDocument, ParseError, builtin,
                        builtin_names, document_from_weighted, parse_instance,
                        serialize_instance)
from .orientation import check_hypothesis as check_orient_hypothesis
from .orientation import strong_orient, verify_strong_orientation
from .random_instances import random_dicut_digraph
from .transshipment import check_condition, solve, verify as verify_flow

log = logging.getLogger("dijoins")

COMMANDS = ("orient", "pack", "min-dicut", "dicuts", "verify", "transship",
            "reproduce-fig1a", "reproduce-schrijver", "reproduce-appendix", "conjecture-scan")


class CommandError(Exception):
    def __init__(self, status: int, kind: str, message: str, witness=None):
        super().__init__(message)
        self.status = status
        self.kind = kind
        self.witness = witness


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(x) for x in obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    return obj


def _load(args) -> InstanceDocument:
    if args.builtin:
        try:
            return builtin(args.builtin)
        except KeyError as exc:
            raise CommandError(1, "input", str(exc.args[0])) from None
    if not args.instance:
        raise CommandError(1, "input", "give an instance file or --builtin NAME")
    try:
        return parse_instance(Path(args.instance).read_text())
    except OSError as exc:
        raise CommandError(1, "input", str(exc)) from None


def _names(doc: InstanceDocument, U) -> list:
    return [doc.vertices[v] for v in sorted(U)]


def _name_vertices(doc: InstanceDocument, witness):
    """Replace vertex indices in precondition witnesses by vertex names."""
    if isinstance(witness, dict):
        return {k: v if k == "weight" else _name_vertices(doc, v) for k, v in witness.items()}
    if isinstance(witness, (list, tuple, set, frozenset)):
        items = list(witness)
        if all(isinstance(x, int) for x in items):
            return _names(doc, items)
        return [_name_vertices(doc, x) for x in items]
    return witness


# ---------------------------------------------------------------------------
# commands

def cmd_orient(args, doc):
    inst = doc.guarded_instance()
    orientation, trace = strong_orient(inst, limit=args.limit)
    witness = {"orientation": {str(eid): [doc.vertices[t], doc.vertices[h]]
                               for eid, (t, h) in sorted(orientation.items())},
               "flipped": trace.flipped}
    if args.trace:
        witness["trace"] = {"x_prime": trace.x_prime, "x_bar": trace.x_bar,
                            "y_bar": trace.y_bar, "y_star": trace.y_star,
                            "method": trace.method, "deviation": trace.deviation}
    return "strong orientation", witness


def cmd_pack(args, doc):
    WD = doc.weighted_digraph()
    pair, steps = packing.pack_two_dijoins(WD, limit=args.limit)
    witness = {"dijoins": [sorted(pair.first), sorted(pair.second)]}
    if args.trace:
        witness["steps"] = [{"kind": s.kind, "vertices": s.child.n, "cycle": s.cycle,
                             "forward": s.forward, "backward": s.backward,
                             "eliminated": s.vertex, "added": s.added} for s in steps]
    return "two disjoint dijoins", witness


def cmd_min_dicut(args, doc):
    WD = doc.weighted_digraph()
    weight, shore = packing.lightest_dicut(WD, args.limit)
    if shore is None:
        return "strongly connected", {"weight": "inf", "shore": None}
    return "minimum dicut", {"weight": weight, "shore": _names(doc, shore)}


def cmd_dicuts(args, doc):
    WD = doc.weighted_digraph()
    cuts = [{"shore": _names(doc, U), "arcs": arcs,
             "weight": sum(WD.weight[a] for a in arcs)}
            for U, arcs in packing.enumerate_dicuts(WD.digraph, args.limit)]
    return "dicuts", {"count": len(cuts), "dicuts": cuts}


def cmd_transship(args, doc):
    P = doc.transshipment_problem()
    result = solve(P)
    if result.feasible:
        return "feasible", {"flow": {str(k): v for k, v in sorted(result.flow.items())}}
    return "infeasible", {"violating_set": _names(doc, result.certificate)}


def cmd_reproduce_fig1a(args, doc):
    doc = builtin("fig1a")
    inst = doc.guarded_instance()
    crossing = is_crossing_family(inst.guards, args.limit)
    degree = check_degree_condition(inst.graph, inst.guards, args.limit)
    found = oracles.brute_force_strong_orientation(inst.graph, inst.guards, args.parallel)
    verdict = "no strong orientation" if found is None else "strong orientation found"
    return verdict, {"crossing_family": crossing is True,
                     "degree_condition": degree is None,
                     "orientations_checked": 1 << len(inst.graph.edges),
                     "orientation": found}


def cmd_reproduce_schrijver(args, doc):
    doc = builtin("schrijver")
    WD = doc.weighted_digraph()
    weight, shore = packing.lightest_dicut(WD, args.limit)
    found = oracles.brute_force_two_dijoins(WD, args.limit, args.parallel)
    verdict = "no two disjoint dijoins" if found is None else "two disjoint dijoins found"
    return verdict, {"min_dicut_weight": weight, "shore": _names(doc, shore),
                     "splits_checked": 1 << len(WD.heavy),
                     "pair": None if found is None else [sorted(found.first), sorted(found.second)]}


def cmd_reproduce_appendix(args, doc):
    doc = builtin("appendix11")
    report = oracles.verify_polytope_vertex(doc.weighted_digraph(), APPENDIX_X,
                                            [(label, U) for label, U, _ in APPENDIX_TIGHT])
    return report.verdict, {"x": APPENDIX_X, "feasible": report.feasible,
                            "violation": report.violation, "claims": report.claims,
                            "claims_verified": report.claims_verified,
                            "claimed_rank": report.claimed_rank, "rank": report.rank,
                            "tight_found": len(report.tight),
                            "fractional": report.fractional}


def cmd_conjecture_scan(args, doc):
    rng = random.Random(args.seed)
    results = []
    archived = []
    for tau in args.tau:
        found = 0
        absent = []
        for _ in range(args.count):
            D = random_dicut_digraph(rng, tau, n_max=args.n_max, m_max=args.m_max)
            part = oracles.brute_force_strengthening_partition(D, tau, budget=args.budget)
            if part is not None:
                found += 1
                continue
            log.warning("no partition into %d strengthening sets found", tau)
            absent.append(D)
            if args.archive:
                archived.append(str(_archive(args.archive, D, tau, len(archived))))
        results.append({"tau": tau, "tested": args.count, "partitioned": found,
                        "absent": len(absent)})
    verdict = "no counterexample" if not archived and all(r["absent"] == 0 for r in results) \
        else "counterexample candidates"
    return verdict, {"seed": args.seed, "results": results, "archived": archived}


def _archive(directory: str, D, tau: int, k: int) -> Path:
    from .graphs import WeightedDigraph

    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    stamp = time.strftime("%Y%m%dT%H%M%S")
    WD = WeightedDigraph(D, {aid: 1 for aid in D.arc_ids()})
    doc = document_from_weighted(f"strengthening-tau{tau}", WD,
                                 meta={"tau": str(tau), "kind": "strengthening-partition-absent"})
    target = path / f"strengthening-tau{tau}-{stamp}-{k}.txt"
    target.write_text(serialize_instance(doc))
    return target


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args, _doc):
    cert = json.loads(Path(args.certificate).read_text())
    command = cert.get("command", [None])[0]
    if "instance" not in cert:
        raise CommandError(1, "input", "certificate carries no instance")
    doc = parse_instance(cert["instance"])
    witness = cert.get("witness") or {}
    verdict = cert.get("verdict")
    ok = _recheck(command, verdict, witness, doc, cert, args)
    return "confirmed" if ok else "rejected", {"command": command, "claimed_verdict": verdict}


def _recheck(command, verdict, witness, doc, cert, args) -> bool:
    idx = doc.index()
    if cert.get("status", 0) != 0:
        return _recheck_error(command, doc, cert, args)
    if command == "orient":
        inst = doc.guarded_instance()
        orientation = {int(k): (idx[t], idx[h]) for k, (t, h) in witness["orientation"].items()}
        edges = {e.id: {e.u, e.v} for e in inst.graph.edges}
        if {k: set(v) for k, v in orientation.items()} != edges:
            return False
        return verify_strong_orientation(orientation, inst.guards, limit=args.limit)
    if command == "pack":
        WD = doc.weighted_digraph()
        first, second = (set(J) for J in witness["dijoins"])
        heavy = set(WD.heavy)
        return (not first & second and first <= heavy and second <= heavy
                and packing.is_dijoin(WD.digraph, first, limit=args.limit)
                and packing.is_dijoin(WD.digraph, second, limit=args.limit))
    if command == "min-dicut":
        WD = doc.weighted_digraph()
        weight, _ = packing.lightest_dicut(WD, args.limit)
        if witness["shore"] is None:
            return math.isinf(weight)
        U = {idx[v] for v in witness["shore"]}
        out = [aid for s, arcs in packing.enumerate_dicuts(WD.digraph, args.limit)
               if set(s) == U for aid in arcs]
        shore_weight = sum(WD.weight[a] for a in out)
        return bool(out) and shore_weight == weight == witness["weight"]
    if command == "dicuts":
        cuts = packing.enumerate_dicuts(doc.weighted_digraph().digraph, args.limit)
        return len(cuts) == witness["count"]
    if command == "transship":
        P = doc.transshipment_problem()
        if verdict == "feasible":
            return verify_flow(P, {int(k): v for k, v in witness["flow"].items()})
        return not check_condition(P, {idx[v] for v in witness["violating_set"]})
    if command in ("reproduce-fig1a", "reproduce-schrijver", "reproduce-appendix",
                   "conjecture-scan"):
        rerun = _run_command(command, args, cert)
        return rerun["verdict"] == verdict
    raise CommandError(1, "input", f"cannot verify certificates of {command!r}")


def _recheck_error(command, doc, cert, args) -> bool:
    try:
        if command == "orient":
            check_orient_hypothesis(doc.guarded_instance(), args.limit)
        elif command == "pack":
            packing.check_hypothesis(doc.weighted_digraph(), args.limit)
        else:
            return False
    except PreconditionError:
        return cert["status"] == 1
    return False


def _run_command(command, args, cert):
    ns = argparse.Namespace(**vars(args))
    for key, value in (cert.get("options") or {}).items():
        setattr(ns, key, value)
    verdict, witness = HANDLERS[command](ns, None)
    return {"verdict": verdict, "witness": witness}


HANDLERS = {
    "orient": cmd_orient,
    "pack": cmd_pack,
    "min-dicut": cmd_min_dicut,
    "dicuts": cmd_dicuts,
    "transship": cmd_transship,
    "verify": cmd_verify,
    "reproduce-fig1a": cmd_reproduce_fig1a,
    "reproduce-schrijver": cmd_reproduce_schrijver,
    "reproduce-appendix": cmd_reproduce_appendix,
    "conjecture-scan": cmd_conjecture_scan,
}

_NEEDS_INSTANCE = {"orient", "pack", "min-dicut", "dicuts", "transship"}
_BUILTIN_FOR = {"reproduce-fig1a": "fig1a", "reproduce-schrijver": "schrijver",
                "reproduce-appendix": "appendix11"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dijoins", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("instance", nargs="?", help="instance file (certificate file for verify)")
    parser.add_argument("--builtin", metavar="NAME", help=f"one of {', '.join(builtin_names())}")
    parser.add_argument("--limit", type=int, default=24, metavar="N",
                        help="largest ground set to enumerate subsets of")
    parser.add_argument("--parallel", type=int, default=1, metavar="K",
                        help="worker processes for brute-force enumeration")
    parser.add_argument("--seed", type=int, default=0, metavar="S")
    parser.add_argument("--trace", action="store_true", help="include solver stages")
    parser.add_argument("--tau", type=int, nargs="+", default=[2, 3])
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--n-max", type=int, default=6)
    parser.add_argument("--m-max", type=int, default=10)
    parser.add_argument("--budget", type=int, default=3 ** 12)
    parser.add_argument("--archive", metavar="DIR", default=None,
                        help="directory for counterexample candidates (conjecture-scan)")
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        args.certificate = args.instance
    cert = {"command": [args.command] + argv[1:]}
    options = {k: getattr(args, k) for k in ("limit", "seed", "tau", "count", "n_max",
                                                "m_max", "budget")}
    cert["options"] = options
    status = 0
    doc = None
    try:
        if args.command in _NEEDS_INSTANCE:
            doc = _load(args)
        elif args.command in _BUILTIN_FOR:
            doc = builtin(_BUILTIN_FOR[args.command])
        if doc is not None:
            cert["instance"] = serialize_instance(doc)
        verdict, witness = HANDLERS[args.command](args, doc)
        cert["verdict"] = verdict
        cert["witness"] = witness
    except CommandError as exc:
        status = exc.status
        cert["verdict"] = "error"
        cert["error"] = {"kind": exc.kind, "message": str(exc), "witness": exc.witness}
    except PreconditionError as exc:
        status = 1
        witness = _name_vertices(doc, exc.witness) if doc is not None else exc.witness
        cert["verdict"] = "precondition failed"
        cert["error"] = {"kind": "precondition", "message": str(exc), "witness": witness}
    except (ParseError, SizeLimitError, OSError, json.JSONDecodeError) as exc:
        status = 1
        cert["verdict"] = "error"
        cert["error"] = {"kind": "input", "message": str(exc)}
    except ContractError as exc:
        status = 2
        cert["verdict"] = "internal error"
        cert["error"] = {"kind": "contract", "message": str(exc), "detail": exc.detail}
    cert["status"] = status
    json.dump(_jsonable(cert), stdout, indent=2, sort_keys=True)
    stdout.write("\n")
    return status


def main() -> None:
    logging.basicConfig(level=os.environ.get("DIJOINS_LOG", "WARNING"))
    sys.exit(run())
