"""Acceptance gate: eight criteria, one PASS/FAIL line each.

Run with ``pytest -m acceptance`` or ``python3 -m tests.test_acceptance``;
the summary lines appear in pytest's terminal summary.
"""

from __future__ import annotations

import contextlib
import io
import itertools
import json
import random
import sys
import time

import pytest

from degpart import generators as gen
from degpart.cli import main as cli_main
from degpart.coloring import (
    chromatic_upper,
    clique_free_plan,
    kostochka_plan,
    triangle_free_color,
)
from degpart.engine import Instance, SolveConfig, solve
from degpart.graph import Graph, degeneracy_order, has_clique, induced_components, max_degree
from degpart.verify import (
    oracle_chromatic,
    oracle_partition_exists,
    verify_coloring,
    verify_partition,
)

pytestmark = pytest.mark.acceptance

CORPUS_SIZE = 500
C1_SECONDS = 300
STARTS = ("greedy", "single", "random")


# collected here and printed by the terminal-summary hook in conftest.py
SUMMARY: list[str] = []


def report(num: int, ok: bool, detail: str) -> None:
    SUMMARY.append(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")


def run_json(inst: Instance, seed: int, start: str) -> str:
    part, trace = solve(inst, seed, SolveConfig(start=start))
    return json.dumps(
        {
            "parts": [list(p) for p in part.parts()],
            "events": [e.as_dict() for e in trace.events],
        }
    )


# -- corpora -----------------------------------------------------------------


def small_corpus() -> list[tuple[str, Graph]]:
    rng = random.Random(20240601)
    out = []
    for i in range(CORPUS_SIZE):
        n = rng.randint(1, 7)
        p = rng.uniform(0.1, 0.9)
        out.append((f"gnp{i}", gen.gnp(n, p, rng.randrange(1 << 30))))
    out += [(f"path{n}", gen.path(n)) for n in range(1, 8)]
    out += [(f"cycle{n}", gen.cycle(n)) for n in range(3, 8)]
    out += [(f"complete{n}", gen.complete(n)) for n in range(3, 6)]
    out.append(("petersen", gen.petersen()))
    return out


def targets(g: Graph):
    d = max_degree(g)
    for k in (1, 2, 3):
        for r in itertools.product(range(4), repeat=k):
            if sum(r) >= d + 2 - k:
                yield r


def path_forest(g: Graph, members) -> bool:
    """Every component of G[members] is a path: max degree 2 and no cycle."""
    inside = set(members)
    degs = [len(g.nbrs[v] & inside) for v in inside]
    if any(d > 2 for d in degs):
        return False
    return sum(degs) // 2 == len(inside) - len(induced_components(g, inside))


def triangle_free_corpus() -> list[Graph]:
    rng = random.Random(3)
    return [
        gen.triangle_free_gnp(rng.randint(1, 60), rng.uniform(0.03, 0.3), rng.randrange(1 << 30))
        for _ in range(200)
    ]


def clique_free_corpus(r: int) -> list[Graph]:
    rng = random.Random(100 + r)
    out = []
    while len(out) < 100:
        n = rng.randint(1, 40)
        g = gen.gnp(n, rng.uniform(0.05, 0.45), rng.randrange(1 << 30))
        if not has_clique(g, r + 1):
            out.append(g)
    return out


# -- criteria ----------------------------------------------------------------


def commit_bound(inst: Instance) -> int:
    g = inst.g
    return g.m + max(inst.r) * g.n + g.n * g.n


def test_criterion_1_and_2():
    """1: every hypothesis-meeting target vector on the small corpus solves,
    verifies and is confirmed by the oracle. 2: monotone traces within the
    commit bound over those runs plus 200 larger gnp instances."""
    t0 = time.perf_counter()
    oracle_cache: dict[tuple, bool] = {}
    runs = fails1 = chains = collisions = 0
    fails2 = []
    for name, g in small_corpus():
        key_g = (g.n, tuple(g.edges()))
        for r in targets(g):
            inst = Instance.build(g, r)
            for start in STARTS:
                runs += 1
                try:
                    part, trace = solve(inst, seed=runs, config=SolveConfig(start=start))
                except Exception as exc:  # any raise is a failure of criterion 1
                    fails1 += 1
                    print(f"{name} r={r} {start}: {exc!r}")
                    continue
                chains += trace.chains
                collisions += trace.collisions
                if not verify_partition(inst, part).ok:
                    fails1 += 1
                    print(f"{name} r={r} {start}: invalid output")
                if not trace.is_monotone() or len(trace.commits) > commit_bound(inst):
                    fails2.append((name, r, start))
            key = (key_g, tuple(sorted(r)))
            if key not in oracle_cache:
                oracle_cache[key] = oracle_partition_exists(inst)
            if not oracle_cache[key]:
                fails1 += 1
                print(f"{name} r={r}: oracle found no valid partition")
    elapsed = time.perf_counter() - t0
    ok1 = fails1 == 0 and elapsed < C1_SECONDS
    report(1, ok1, f"{runs} solves, {len(oracle_cache)} oracle calls, "
                   f"{fails1} failures, {elapsed:.1f}s (limit {C1_SECONDS}s)")

    rng = random.Random(77)
    extra = 0
    max_commits = 0
    for i in range(200):
        n = rng.randint(1, 60)
        g = gen.gnp(n, rng.uniform(0.02, 0.3), rng.randrange(1 << 30))
        d = max_degree(g)
        k = rng.randint(1, d + 1)
        # random targets meeting the hypothesis with equality or a little slack
        need = max(d + 2 - k, 0) + rng.randint(0, 1)
        r = [0] * k
        for _ in range(need):
            r[rng.randrange(k)] += 1
        inst = Instance.build(g, r)
        for start in ("greedy", "single", "random"):
            extra += 1
            part, trace = solve(inst, seed=i, config=SolveConfig(start=start))
            max_commits = max(max_commits, len(trace.commits))
            chains += trace.chains
            collisions += trace.collisions
            if (
                not trace.is_monotone()
                or len(trace.commits) > commit_bound(inst)
                or not verify_partition(inst, part).ok
            ):
                fails2.append((f"gnp-large{i}", tuple(r), start))
    report(2, not fails2, f"{runs + extra} traces, {len(fails2)} breaches, "
                          f"max commits {max_commits}, {chains} chains, {collisions} collisions")
    assert ok1
    assert not fails2


def test_criterion_3():
    fails = []
    for idx, g in enumerate(triangle_free_corpus()):
        assert not has_clique(g, 3)
        d = max_degree(g)
        k = -(-(d + 2) // 3)
        inst = Instance.build(g, [2] * k)
        part, _ = solve(inst, seed=idx, config=SolveConfig(start="random"))
        if not verify_partition(inst, part).ok or not all(
            path_forest(g, m) for m in part.parts()
        ):
            fails.append((idx, "structure"))
        res = triangle_free_color(g, seed=idx)
        bound = 2 * k
        if d % 3 == 2:
            bound = min(bound, (2 * (d + 3)) // 3)
        if not verify_coloring(g, res.colors) or res.used > bound:
            fails.append((idx, "colors", res.used, bound))
        plan = kostochka_plan(d)
        for ri, members in zip(plan.r, res.parts):
            if ri == 2 and not path_forest(g, members):
                fails.append((idx, "economical structure"))
    report(3, not fails, f"200 triangle-free graphs, {len(fails)} failures")
    assert not fails


def test_criterion_4():
    fails = []
    for r in (2, 3):
        for idx, g in enumerate(clique_free_corpus(r)):
            d = max_degree(g)
            res = chromatic_upper(g, r, seed=idx)
            if not verify_coloring(g, res.colors) or res.used > d + 2 - (d + 2) // (r + 1):
                fails.append((r, idx, "colors"))
            for ri, members in zip(res.plan.r, res.parts):
                if ri != r:
                    continue
                for comp in induced_components(g, members):
                    if degeneracy_order(g, comp)[1] > r - 1:
                        fails.append((r, idx, "degeneracy"))
    report(4, not fails, f"2 x 100 clique-free graphs, {len(fails)} failures")
    assert not fails


def test_criterion_5():
    rng = random.Random(5)
    fails = []
    for idx in range(100):
        g = gen.gnp(rng.randint(1, 50), rng.uniform(0.02, 0.4), rng.randrange(1 << 30))
        d = max_degree(g)
        k = rng.randint(1, d + 1)
        r = [0] * k
        for _ in range(d + 1 - k):
            r[rng.randrange(k)] += 1
        assert sum(r) == d + 1 - k
        inst = Instance.build(g, r, mode="lovasz")
        for start in ("greedy", "single"):
            part, _ = solve(inst, seed=idx, config=SolveConfig(start=start))
            if not verify_partition(inst, part).ok:
                fails.append((idx, tuple(r), start))
        zero = Instance.build(g, [0] * (d + 1), mode="lovasz")
        part, _ = solve(zero, seed=idx, config=SolveConfig(start="single"))
        if not verify_coloring(g, part.assign):
            fails.append((idx, "coloring"))
    report(5, not fails, f"100 exact-threshold instances plus zero-vector colorings, "
                         f"{len(fails)} failures")
    assert not fails


def _cli(*argv) -> int:
    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
        return cli_main(list(argv))


def test_criterion_6(tmp_path):
    checks = []
    checks.append(("C4 k=1 r=2", _cli("partition", "--gen", "cycle:4", "--k", "1", "--r", "2"), 2))
    checks.append(("K4 k=2 r=1,1",
                   _cli("partition", "--gen", "complete:4", "--k", "2", "--r", "1,1"), 2))
    corrupt = {
        "forbidden C4": {"n": 4, "r": [2, 2], "parts": [[0, 1, 2, 3], []]},
        "degree cap": {"n": 4, "r": [1, 1], "parts": [[0, 1, 2], [3]]},
        "missing vertex": {"n": 4, "r": [2, 2], "parts": [[0, 1], [2]]},
        "duplicate vertex": {"n": 4, "r": [2, 2], "parts": [[0, 1, 2], [2, 3]]},
    }
    for label, data in corrupt.items():
        path = tmp_path / f"{label.replace(' ', '_')}.json"
        path.write_text(json.dumps(data))
        checks.append((label, _cli("verify", "--gen", "cycle:4", "--partition", str(path)), 4))
    bad = [(label, got, want) for label, got, want in checks if got != want]
    report(6, not bad, f"{len(checks)} negative controls, mismatches: {bad or 'none'}")
    assert not bad


def test_criterion_7():
    cases = [("petersen", gen.petersen(), 3, 2), ("C5", gen.cycle(5), 3, 2),
             ("K4", gen.complete(4), 4, 4)]
    rows = []
    ok = True
    for name, g, chi, r in cases:
        got = oracle_chromatic(g)
        used = chromatic_upper(g, r).used
        rows.append(f"{name} chi={got} upper={used}")
        ok &= got == chi and got <= used
    report(7, ok, "; ".join(rows))
    assert ok


def test_criterion_8():
    runs = []
    for name, g in small_corpus()[:: 25]:
        for r in itertools.islice(targets(g), 3):
            runs.append(("c1", Instance.build(g, r), 11, "random"))
    for idx, g in enumerate(triangle_free_corpus()[:: 10]):
        runs.append(("c3", Instance.build(g, kostochka_plan(max_degree(g)).r), idx, "random"))
    for idx, g in enumerate(clique_free_corpus(3)[:: 10]):
        d = max_degree(g)
        runs.append(("c4", Instance.build(g, clique_free_plan(d, 3).r), idx, "single"))
    diffs = [tag for tag, inst, seed, start in runs
             if run_json(inst, seed, start) != run_json(inst, seed, start)]

    def cli_out(argv):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
            code = cli_main(argv)
        return code, buf.getvalue()

    cli_runs = [
        ["partition", "--gen", "trifree:50,0.1", "--seed", "4", "--plan", "kostochka",
         "--start", "random"],
        ["color", "--gen", "trifree:50,0.1", "--seed", "4", "--plan", "kostochka"],
        ["color", "--gen", "trifree:40,0.2", "--seed", "8", "--plan", "cliquefree:3"],
    ]
    for argv in cli_runs:
        first = cli_out(argv)
        if first[0] != 0 or first != cli_out(argv):
            diffs.append(" ".join(argv))
    report(8, not diffs, f"{len(runs) + len(cli_runs)} repeated runs, "
                         f"{len(diffs)} differing outputs")
    assert not diffs


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
