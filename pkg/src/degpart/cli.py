"""Command-line interface.

Exit codes: 0 ok, 1 bad input, 2 hypothesis not met, 3 internal invariant
broken, 4 verification failed, 5 size guard exceeded.

JSON reports keep a fixed key order so identical runs give identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass

from .coloring import chromatic_upper, clique_free_plan, kostochka_plan, triangle_free_color
from .engine import STARTS, Instance, Partition, SolveConfig, potential, solve
from .errors import (
    BadParameter,
    GenerationFailed,
    HypothesisNotMet,
    InvariantViolation,
    NotCliqueFree,
    ParseError,
    SizeGuardExceeded,
)
from .generators import parse_spec
from .graph import Graph, max_degree
from .graphio import FORMATS, emit_graph, read_graph
from .verify import oracle_partition_exists, verify_partition

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_HYPOTHESIS = 2
EXIT_INTERNAL = 3
EXIT_INVALID = 4
EXIT_GUARD = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    gen: str | None = None
    format: str | None = None
    mode: str = "main"
    k: int | None = None
    r: list[int] | None = None
    plan: str | None = None
    economical: bool = True
    seed: int = 0
    output: str = "json"
    out_path: str | None = None
    trace: bool = False
    chain_cap: int | None = None
    partition: str | None = None
    suite: str = "smoke"
    start: str = "greedy"


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="degpart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_args(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", "-i", help="graph file (DIMACS .col or edge list)")
        src.add_argument("--gen", help="generator spec, e.g. petersen, cycle:5, gnp:20,0.2")
        p.add_argument("--format", choices=FORMATS, help="input file format (default: by extension)")
        p.add_argument("--seed", type=int, default=0)

    def target_args(p):
        p.add_argument("--k", type=int)
        p.add_argument("--r", type=_int_list, help="comma-separated degree targets")
        p.add_argument("--mode", choices=("main", "lovasz"), default="main")

    def out_args(p):
        p.add_argument("--output", choices=("json", "text"), default="json")
        p.add_argument("-o", "--out", dest="out_path")

    p = sub.add_parser("partition", help="partition the vertex set")
    graph_args(p)
    target_args(p)
    out_args(p)
    p.add_argument("--plan", help="kostochka or cliquefree:R instead of --k/--r")
    p.add_argument("--economical", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--trace", action="store_true", help="dump the move trace to stderr as JSON lines")
    p.add_argument("--chain-cap", type=int)
    p.add_argument("--start", choices=STARTS, default="greedy", help="initial partition")

    p = sub.add_parser("color", help="color via a partition plan")
    graph_args(p)
    out_args(p)
    p.add_argument("--plan", required=True, help="kostochka or cliquefree:R")
    p.add_argument("--economical", action=argparse.BooleanOptionalAction, default=True)

    p = sub.add_parser("verify", help="re-check a partition file")
    graph_args(p)
    out_args(p)
    p.add_argument("--partition", required=True, help="JSON written by 'partition'")

    p = sub.add_parser("oracle", help="exhaustively decide whether a valid partition exists")
    graph_args(p)
    target_args(p)
    out_args(p)

    p = sub.add_parser("gen", help="write a generated graph")
    p.add_argument("--gen", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=FORMATS, default="dimacs")
    p.add_argument("-o", "--out", dest="out_path")

    p = sub.add_parser("bench", help="run a benchmark suite and print CSV")
    p.add_argument("--suite", choices=sorted(SUITES), default="smoke")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", dest="out_path")
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(**fields)


# -- helpers -----------------------------------------------------------------


def load_input(cfg: RunConfig) -> Graph:
    if cfg.gen:
        return parse_spec(cfg.gen, cfg.seed)
    try:
        return read_graph(cfg.input, cfg.format)
    except OSError as exc:
        raise ParseError(f"cannot read {cfg.input}: {exc}") from None


def _targets(cfg: RunConfig, g: Graph) -> list[int]:
    if cfg.plan:
        return list(_plan(cfg.plan, max_degree(g), cfg.economical).r)
    if cfg.r is None:
        raise UsageError("give --r (and optionally --k) or --plan")
    if cfg.k is not None and cfg.k != len(cfg.r):
        raise UsageError(f"--k {cfg.k} does not match {len(cfg.r)} targets in --r")
    return cfg.r


def _plan(spec: str, delta: int, economical: bool):
    name, _, arg = spec.partition(":")
    if name == "kostochka" and not arg:
        return kostochka_plan(delta, economical)
    if name == "cliquefree":
        try:
            return clique_free_plan(delta, int(arg), economical)
        except ValueError:
            pass
    raise UsageError(f"unknown plan {spec!r}; use kostochka or cliquefree:R")


def _emit(cfg: RunConfig, payload: dict, text: str | None = None) -> None:
    if cfg.output == "text" and text is not None:
        body = text
    else:
        body = json.dumps(payload)
    body += "\n"
    if cfg.out_path:
        with open(cfg.out_path, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _dump_trace(trace) -> None:
    if trace is None:
        return
    for event in trace.events:
        sys.stderr.write(json.dumps(event.as_dict()) + "\n")


# -- commands ----------------------------------------------------------------


def cmd_partition(cfg: RunConfig) -> int:
    g = load_input(cfg)
    r = _targets(cfg, g)
    inst = Instance.build(g, r, cfg.mode)
    try:
        part, trace = solve(inst, cfg.seed, SolveConfig(chain_cap=cfg.chain_cap, start=cfg.start))
    except InvariantViolation as exc:
        if cfg.trace:
            _dump_trace(exc.trace)
        raise
    if cfg.trace:
        _dump_trace(trace)
    report = verify_partition(inst, part)
    pot = potential(inst, part)
    payload = {
        "n": g.n,
        "m": g.m,
        "k": inst.k,
        "r": list(inst.r),
        "mode": inst.mode,
        "parts": [list(p) for p in part.parts()],
        "potential": pot.as_dict(),
        "valid": report.ok,
        "moves": trace.moves,
    }
    text = "\n".join(
        [f"n={g.n} m={g.m} k={inst.k} r={list(inst.r)} mode={inst.mode} valid={report.ok}"]
        + [f"part {i}: {' '.join(map(str, p))}" for i, p in enumerate(part.parts())]
    )
    _emit(cfg, payload, text)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_color(cfg: RunConfig) -> int:
    g = load_input(cfg)
    name, _, arg = cfg.plan.partition(":")
    if name == "kostochka" and not arg:
        result = triangle_free_color(g, cfg.economical, cfg.seed)
    elif name == "cliquefree":
        try:
            r = int(arg)
        except ValueError:
            raise UsageError(f"bad plan {cfg.plan!r}") from None
        result = chromatic_upper(g, r, cfg.economical, cfg.seed)
    else:
        raise UsageError(f"unknown plan {cfg.plan!r}; use kostochka or cliquefree:R")
    text = f"used={result.used} bound={result.bound}\ncolors: {' '.join(map(str, result.colors))}"
    _emit(cfg, result.as_dict(), text)
    return EXIT_OK


def _read_partition_file(path: str, g: Graph) -> tuple[list[int], str, list[list[int]]]:
    try:
        with open(path) as fh:
            data = json.load(fh)
        r = [int(x) for x in data["r"]]
        mode = str(data.get("mode", "main"))
        parts = [[int(v) for v in p] for p in data["parts"]]
        n = int(data.get("n", g.n))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"malformed partition file {path}: {exc}") from None
    if n != g.n:
        raise ParseError(f"partition file is for {n} vertices, graph has {g.n}")
    if len(parts) != len(r):
        raise ParseError(f"{len(parts)} parts but {len(r)} targets")
    if any(not 0 <= v < g.n for p in parts for v in p):
        raise ParseError("partition file names a vertex outside the graph")
    return r, mode, parts


def cmd_verify(cfg: RunConfig) -> int:
    g = load_input(cfg)
    r, mode, parts = _read_partition_file(cfg.partition, g)
    inst = Instance.build(g, r, mode)
    owner: dict[int, list[int]] = {}
    for i, p in enumerate(parts):
        for v in p:
            owner.setdefault(v, []).append(i)
    coverage = [
        {"vertex": v, "parts": owner.get(v, [])}
        for v in range(g.n)
        if len(owner.get(v, [])) != 1
    ]
    if coverage:
        payload = {"ok": False, "violations": [], "coverage": coverage}
        _emit(cfg, payload, f"not a partition: {len(coverage)} vertices misassigned")
        return EXIT_INVALID
    assign = [owner[v][0] for v in range(g.n)]
    report = verify_partition(inst, Partition(g, inst.k, assign))
    payload = {"ok": report.ok, "violations": [v.as_dict() for v in report.violations]}
    lines = [f"ok={report.ok}"] + [
        f"part {v.part}: {v.kind} {v.witness}" for v in report.violations
    ]
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_oracle(cfg: RunConfig) -> int:
    g = load_input(cfg)
    inst = Instance.build(g, _targets(cfg, g), cfg.mode)
    exists = oracle_partition_exists(inst)
    _emit(cfg, {"exists": exists}, f"exists:{str(exists).lower()}")
    return EXIT_OK


def cmd_gen(cfg: RunConfig) -> int:
    g = parse_spec(cfg.gen, cfg.seed)
    text = emit_graph(g, cfg.format or "dimacs")
    if cfg.out_path:
        with open(cfg.out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# (name, generator spec, targets or plan)
SUITES = {
    "smoke": [
        ("petersen-2x2", "petersen", [2, 2]),
        ("c5-kostochka", "cycle:5", "kostochka"),
        ("k4-2-1", "complete:4", [2, 1]),
        ("gnp30-kostochka", "gnp:30,0.2", "kostochka"),
        ("trifree40-kostochka", "trifree:40,0.15", "kostochka"),
        ("regular20x4-2x2", "regular:20,4", [2, 2]),
        ("regular24x5-cliquefree3", "regular:24,5", "cliquefree:3"),
    ],
    "standard": [
        ("gnp200-kostochka", "gnp:200,0.05", "kostochka"),
        ("trifree300-kostochka", "trifree:300,0.03", "kostochka"),
        ("regular200x4-2x2", "regular:200,4", [2, 2]),
        ("regular200x6-3x3", "regular:200,6", [3, 3]),
        ("regular300x7-cliquefree3", "regular:300,7", "cliquefree:3"),
        ("gnp500-cliquefree2", "gnp:500,0.02", "cliquefree:2"),
    ],
}

BENCH_HEADER = ["instance", "n", "m", "delta", "k", "moves", "chains", "max_chain", "wall_time"]


def bench_rows(suite: str, seed: int = 0) -> list[list]:
    rows = []
    for name, spec, targets in SUITES[suite]:
        g = parse_spec(spec, seed)
        delta = max_degree(g)
        r = list(_plan(targets, delta, True).r) if isinstance(targets, str) else targets
        inst = Instance.build(g, r)
        start = time.perf_counter()
        _, trace = solve(inst, seed)
        wall = time.perf_counter() - start
        rows.append([name, g.n, g.m, delta, inst.k, trace.moves, trace.chains,
                     trace.max_chain, f"{wall:.4f}"])
    return rows


def cmd_bench(cfg: RunConfig) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    writer.writerows(bench_rows(cfg.suite, cfg.seed))
    if cfg.out_path:
        with open(cfg.out_path, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


COMMANDS = {
    "partition": cmd_partition,
    "color": cmd_color,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    cfg = _config(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except (ParseError, BadParameter, GenerationFailed, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (HypothesisNotMet, NotCliqueFree) as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except SizeGuardExceeded as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
