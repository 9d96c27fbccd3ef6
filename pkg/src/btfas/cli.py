"""Command-line front end: instance I/O, solving, oracles and self-tests.

Machine-readable results go to standard output as a single JSON document
(or, for ``gen`` without ``--out``, as the instance text itself); human
diagnostics go to standard error.  Exit codes: 0 success, 1 usage or
parse error, 2 precondition violation or failed verification, 3 internal
invariant violation.

Instance file format, bit-exact::

    c optional comment lines
    p bt <m> <n>
    a x<i> y<j>
    a y<j> x<i>

One line per arc, tail first; pairs not listed are absent.  Rendering
emits arcs in canonical order (X-tail arcs by (i, j), then Y-tail arcs by
(j, i)), UTF-8 with newline terminators.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Iterable, Optional, Sequence

from . import c4free_fas, fas_engine, instance_gen, oracles, p4_census
from .cycle_packing import greedy_pack
from .errors import InternalInvariantError, PreconditionError
from .graph_core import (
    Arc,
    BipartiteDigraph,
    FourCycle,
    VertexRef,
    build,
    xv,
    yv,
)

_VERTEX_RE = re.compile(r"([xy])([0-9]+)\Z")


class InstanceFormatError(ValueError):
    """The instance or certificate file cannot be parsed."""


class _UsageError(Exception):
    pass


# ----------------------------------------------------------------------
# instance and certificate encoding


def parse_vertex(token: str) -> VertexRef:
    match = _VERTEX_RE.fullmatch(token)
    if match is None:
        raise InstanceFormatError(f"bad vertex token {token!r}")
    side, index = match.groups()
    return xv(int(index)) if side == "x" else yv(int(index))


def parse_arc(token: str) -> Arc:
    parts = token.split(">")
    if len(parts) != 2:
        raise InstanceFormatError(f"bad arc token {token!r}")
    return Arc(parse_vertex(parts[0]), parse_vertex(parts[1]))


def parse_instance(text: str) -> BipartiteDigraph:
    """Parse the instance format; raises InstanceFormatError on any defect."""
    sizes: Optional[tuple[int, int]] = None
    arcs: list[tuple[VertexRef, VertexRef]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if sizes is not None:
                raise InstanceFormatError(f"line {lineno}: second problem line")
            if len(fields) != 4 or fields[1] != "bt":
                raise InstanceFormatError(f"line {lineno}: expected 'p bt <m> <n>'")
            try:
                sizes = (int(fields[2]), int(fields[3]))
            except ValueError:
                raise InstanceFormatError(f"line {lineno}: non-integer side size") from None
        elif fields[0] == "a":
            if sizes is None:
                raise InstanceFormatError(f"line {lineno}: arc before the problem line")
            if len(fields) != 3:
                raise InstanceFormatError(f"line {lineno}: expected 'a <tail> <head>'")
            arcs.append((parse_vertex(fields[1]), parse_vertex(fields[2])))
        else:
            raise InstanceFormatError(f"line {lineno}: unknown line type {fields[0]!r}")
    if sizes is None:
        raise InstanceFormatError("missing problem line 'p bt <m> <n>'")
    try:
        return build(sizes[0], sizes[1], arcs)
    except PreconditionError as exc:
        raise InstanceFormatError(str(exc)) from exc


def render_instance(graph: BipartiteDigraph) -> str:
    lines = [f"p bt {graph.m} {graph.n}"]
    lines.extend(f"a {arc.tail} {arc.head}" for arc in graph.arcs())
    return "\n".join(lines) + "\n"


def _arc_strings(arcs: Iterable[Arc]) -> list[str]:
    return [str(a) for a in sorted(arcs)]


def _cycle_lists(cycles: Iterable[FourCycle]) -> list[list[str]]:
    return [[str(v) for v in c.vertices] for c in cycles]


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _load_instance(path: str) -> BipartiteDigraph:
    if path == "-":
        return parse_instance(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_instance(handle.read())
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc}") from exc


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceFormatError(f"{path}: expected a JSON object")
    return doc


# ----------------------------------------------------------------------
# diagnostics


def _diag(message: str) -> None:
    prefix = "error:"
    if sys.stderr.isatty() and not os.environ.get("NO_COLOR"):
        prefix = "\x1b[31merror:\x1b[0m"
    print(f"btfas: {prefix} {message}", file=sys.stderr)


def _note(message: str) -> None:
    print(f"btfas: {message}", file=sys.stderr)


# ----------------------------------------------------------------------
# subcommands


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.mode == "enumerate":
        if args.out is None:
            raise _UsageError("gen --mode enumerate requires --out PREFIX")
        files = []
        for i, graph in enumerate(instance_gen.enumerate_bt(args.m, args.n)):
            path = f"{args.out}{i:05d}.bt"
            with open(path, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(render_instance(graph))
            files.append(path)
        _emit({"mode": "gen", "count": len(files), "files": files})
        return 0

    make = instance_gen.random_bt if args.mode == "random" else instance_gen.random_c4free
    if args.count is not None:
        if args.out is None:
            raise _UsageError("gen --count requires --out PREFIX")
        files = []
        for i in range(args.count):
            spec = instance_gen.GenSpec(args.m, args.n, args.seed + i, args.bias)
            path = f"{args.out}{i:05d}.bt"
            with open(path, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(render_instance(make(spec)))
            files.append(path)
        _emit({"mode": "gen", "count": len(files), "files": files})
        return 0

    graph = make(instance_gen.GenSpec(args.m, args.n, args.seed, args.bias))
    text = render_instance(graph)
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        _emit({"mode": "gen", "count": 1, "files": [args.out]})
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    graph = _load_instance(args.instance)
    outcome = fas_engine.solve(graph, args.k)
    doc = {
        "mode": "solve",
        "k": args.k,
        "lambda": graph.absent_pair_count(),
    }
    if isinstance(outcome, fas_engine.PackingOutcome):
        doc["branch"] = "packing"
        doc["packing"] = _cycle_lists(outcome.packing.cycles)
        doc["fas"] = None
        doc["bound"] = None
    else:
        doc["branch"] = "fas"
        doc["packing"] = _cycle_lists(outcome.packing.cycles)
        doc["fas"] = _arc_strings(outcome.fas)
        doc["bound"] = outcome.bound
        doc["residual_fas"] = _arc_strings(outcome.residual_part)
        doc["backward"] = _arc_strings(outcome.backward_part)
        doc["order"] = [str(v) for v in outcome.order]
    _emit(doc)
    return 0


def _cmd_fas_c4free(args: argparse.Namespace) -> int:
    graph = _load_instance(args.instance)
    certificate = c4free_fas.fas_c4free(graph)
    _emit(
        {
            "mode": "fas-c4free",
            "branch": "fas",
            "lambda": graph.absent_pair_count(),
            "fas": _arc_strings(certificate.fas),
            "bound": certificate.bound,
            "trace": [
                {
                    "depth": t.depth,
                    "mode": t.mode,
                    "center": str(t.center),
                    "cut_size": t.cut_size,
                    "sub_bounds": list(t.sub_bounds),
                }
                for t in certificate.trace
            ],
        }
    )
    return 0


def _cmd_pack(args: argparse.Namespace) -> int:
    graph = _load_instance(args.instance)
    packing = greedy_pack(graph, args.limit)
    maximal = args.limit is None or len(packing.cycles) < args.limit
    _emit(
        {
            "mode": "pack",
            "branch": "packing",
            "lambda": graph.absent_pair_count(),
            "limit": args.limit,
            "count": len(packing.cycles),
            "maximal": maximal,
            "packing": _cycle_lists(packing.cycles),
            "residual_lambda": packing.residual.absent_pair_count(),
        }
    )
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    graph = _load_instance(args.instance)
    if args.min_fas:
        result = oracles.min_fas_exact(graph)
        witness = _arc_strings(result.witness)
        kind = "min-fas"
    else:
        result = oracles.max_c4_packing_exact(graph)
        witness = _cycle_lists(result.witness)
        kind = "max-packing"
    _emit({"mode": "oracle", "kind": kind, "value": result.value, "witness": witness})
    return 0


def _cmd_census(args: argparse.Namespace) -> int:
    graph = _load_instance(args.instance)
    per_vertex = [
        {
            "vertex": str(v),
            "first": p4_census.first_count(graph, v),
            "sec": p4_census.sec_count(graph, v),
        }
        for v in graph.vertices()
    ]
    sums = p4_census.census_sums(graph)
    _emit(
        {
            "mode": "census",
            "m": graph.m,
            "n": graph.n,
            "lambda": graph.absent_pair_count(),
            "per_vertex": per_vertex,
            "sum_first": sums.sum_first,
            "sum_sec": sums.sum_sec,
            "classes2": sums.count2,
            "classes3": sums.count3,
        }
    )
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    graph = _load_instance(args.instance)
    cert = _load_json(args.fas if args.fas else args.packing)

    def fail(reason: str, kind: str) -> int:
        _emit({"mode": "verify", "kind": kind, "valid": False, "reason": reason})
        _diag(f"certificate rejected: {reason}")
        return 2

    if args.fas:
        raw = cert.get("fas")
        if not isinstance(raw, list):
            return fail("certificate has no arc list under 'fas'", "fas")
        arcs = [parse_arc(token) for token in raw]
        for arc in arcs:
            if not graph.has_arc(arc):
                return fail(f"arc {arc} is not in the instance", "fas")
        if not graph.is_feedback_arc_set(arcs):
            return fail("deleting the arcs leaves a cycle", "fas")
        if args.k is not None and len(arcs) > 7 * (args.k - 1):
            return fail(f"{len(arcs)} arcs exceed the bound {7 * (args.k - 1)}", "fas")
        _emit(
            {
                "mode": "verify",
                "kind": "fas",
                "valid": True,
                "size": len(arcs),
                "bound": None if args.k is None else 7 * (args.k - 1),
            }
        )
        return 0

    raw = cert.get("packing")
    if not isinstance(raw, list):
        return fail("certificate has no cycle list under 'packing'", "packing")
    cycles = []
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 4:
            return fail(f"bad cycle entry {entry!r}", "packing")
        cycles.append(FourCycle(tuple(parse_vertex(tok) for tok in entry)))
    seen: set[Arc] = set()
    for cycle in cycles:
        if not cycle.is_cycle_of(graph):
            return fail(f"{[str(v) for v in cycle.vertices]} is not a 4-cycle here", "packing")
        if any(a in seen for a in cycle.arcs()):
            return fail("cycles share an arc", "packing")
        seen.update(cycle.arcs())
    if args.k is not None and len(cycles) < args.k:
        return fail(f"only {len(cycles)} cycles, need {args.k}", "packing")
    _emit({"mode": "verify", "kind": "packing", "valid": True, "count": len(cycles)})
    return 0


def _all_oriented_2x2() -> Iterable[BipartiteDigraph]:
    """All 3^4 oriented 2x2 bipartite digraphs, absent pairs included."""
    for code in range(81):
        states = []
        c = code
        for _ in range(4):
            states.append(c % 3)
            c //= 3
        yield BipartiteDigraph(2, 2, bytes(states))


def _cmd_selftest(args: argparse.Namespace) -> int:
    del args
    checks: list[dict] = []

    def record(name: str, instances: int) -> None:
        checks.append({"name": name, "instances": instances})
        _note(f"ok {name} ({instances} instances)")

    count = 0
    for size in (1, 2, 3):
        for graph in instance_gen.enumerate_bt(size, size):
            count += 1
            sums = p4_census.census_sums(graph)
            buckets = p4_census.first_sec_by_buckets(graph)
            if sums.sum_first != sums.count2 or sums.sum_sec != sums.count3:
                raise InternalInvariantError(f"census sums disagree on {graph}")
            for v in graph.vertices():
                closed = (p4_census.first_count(graph, v), p4_census.sec_count(graph, v))
                if closed != buckets[v]:
                    raise InternalInvariantError(f"count routes disagree at {v} on {graph}")
            flipped = graph.reverse()
            rsums = p4_census.census_sums(flipped)
            if (sums.sum_first, sums.sum_sec) != (rsums.sum_sec, rsums.sum_first):
                raise InternalInvariantError(f"reversal sums disagree on {graph}")
    record("census-identities-exhaustive", count)

    count = 0
    for graph in _all_oriented_2x2():
        count += 1
        topo = graph.topological_order()
        brute = oracles.find_cycle_brute(graph)
        if (topo.order is None) != (brute is not None):
            raise InternalInvariantError(f"cycle detection routes disagree on {graph}")
    record("acyclicity-vs-brute-2x2", count)

    count = 0
    for size in (1, 2, 3):
        for graph in instance_gen.enumerate_bt(size, size):
            if c4free_fas.find_4cycle(graph) is not None:
                continue
            count += 1
            certificate = c4free_fas.fas_c4free(graph)
            if len(certificate.fas) > graph.absent_pair_count():
                raise InternalInvariantError(f"bound violated on {graph}")
    record("c4free-certificates", count)

    count = 0
    for size in (1, 2, 3):
        for graph in instance_gen.enumerate_bt(size, size):
            for k in range(4):
                count += 1
                outcome = fas_engine.solve(graph, k)
                if isinstance(outcome, fas_engine.PackingOutcome):
                    if len(outcome.packing.cycles) < k or not outcome.packing.validate(graph):
                        raise InternalInvariantError(f"bad packing certificate on {graph}")
                else:
                    if len(outcome.fas) > 7 * (k - 1):
                        raise InternalInvariantError(f"bound violated on {graph} at k={k}")
                    if not graph.is_feedback_arc_set(outcome.fas):
                        raise InternalInvariantError(f"invalid arc set on {graph} at k={k}")
    record("dichotomy-exhaustive", count)

    count = 0
    for size in (2, 3):
        for graph in instance_gen.enumerate_bt(size, size):
            count += 1
            best_fas = oracles.min_fas_exact(graph).value
            best_pack = oracles.max_c4_packing_exact(graph).value
            if best_fas > 7 * best_pack:
                raise InternalInvariantError(f"oracle inequality violated on {graph}")
    record("min-fas-vs-packing-oracles", count)

    _emit({"mode": "selftest", "ok": True, "checks": checks})
    return 0


# ----------------------------------------------------------------------
# dispatch


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="btfas", description=__doc__, add_help=True)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    gen = sub.add_parser("gen", help="generate instances")
    gen.add_argument("--mode", choices=("random", "random-c4free", "enumerate"), default="random")
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0, help="decimal 64-bit seed")
    gen.add_argument("--bias", type=float, default=0.5)
    gen.add_argument("--out", help="output file, or prefix with --count/enumerate")
    gen.add_argument("--count", type=int, help="generate this many instances (seed, seed+1, ...)")
    gen.set_defaults(handler=_cmd_gen)

    solve = sub.add_parser("solve", help="k 4-cycles or a feedback arc set of size <= 7(k-1)")
    solve.add_argument("instance", help="instance file, or - for stdin")
    solve.add_argument("--k", type=int, required=True)
    solve.set_defaults(handler=_cmd_solve)

    fas = sub.add_parser("fas-c4free", help="certified feedback arc set of a 4-cycle-free instance")
    fas.add_argument("instance")
    fas.set_defaults(handler=_cmd_fas_c4free)

    pack = sub.add_parser("pack", help="greedy arc-disjoint 4-cycle packing")
    pack.add_argument("instance")
    pack.add_argument("--limit", type=int)
    pack.set_defaults(handler=_cmd_pack)

    oracle = sub.add_parser("oracle", help="exact exponential-time reference values")
    oracle.add_argument("instance")
    group = oracle.add_mutually_exclusive_group(required=True)
    group.add_argument("--min-fas", action="store_true")
    group.add_argument("--max-packing", action="store_true")
    oracle.set_defaults(handler=_cmd_oracle)

    verify = sub.add_parser("verify", help="re-check an emitted certificate")
    verify.add_argument("instance")
    group = verify.add_mutually_exclusive_group(required=True)
    group.add_argument("--fas", metavar="CERT")
    group.add_argument("--packing", metavar="CERT")
    verify.add_argument("--k", type=int)
    verify.set_defaults(handler=_cmd_verify)

    census = sub.add_parser("census", help="per-vertex first/sec counts and class totals")
    census.add_argument("instance")
    census.set_defaults(handler=_cmd_census)

    selftest = sub.add_parser("selftest", help="run the exhaustive small-size suites")
    selftest.set_defaults(handler=_cmd_selftest)

    return parser


def run(argv: Sequence[str]) -> int:
    """Dispatch one invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except _UsageError as exc:
        _diag(str(exc))
        return 1
    except SystemExit as exc:  # argparse --help
        return 0 if exc.code in (0, None) else 1
    if getattr(args, "handler", None) is None:
        _diag("a subcommand is required (see --help)")
        return 1
    try:
        return args.handler(args)
    except _UsageError as exc:
        _diag(str(exc))
        return 1
    except InstanceFormatError as exc:
        _diag(str(exc))
        return 1
    except PreconditionError as exc:
        _diag(str(exc))
        return 2
    except InternalInvariantError as exc:
        _diag(f"internal invariant violation: {exc}")
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))
