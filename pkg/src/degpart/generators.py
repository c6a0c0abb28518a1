"""Deterministic graph generators, all driven by ``random.Random(seed)``."""

from __future__ import annotations

import itertools
import random

from .errors import BadParameter, GenerationFailed
from .graph import Graph

REGULAR_ATTEMPTS = 1000


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise BadParameter("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def gnp(n: int, prob: float, seed: int = 0) -> Graph:
    if not 0.0 <= prob <= 1.0:
        raise BadParameter(f"edge probability {prob} outside [0, 1]")
    rng = random.Random(seed)
    return Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < prob])


def triangle_free_gnp(n: int, prob: float, seed: int = 0) -> Graph:
    """``gnp`` with one edge removed from every triangle met in lex order.

    A single pass over triples ``a < b < c`` suffices: deletions never create
    triangles, and each triple is inspected with the edges current at that time.
    The deleted edge is ``(b, c)``.
    """
    g = gnp(n, prob, seed)
    nbrs = [set(a) for a in g.adj]
    for a in range(n):
        for b in sorted(w for w in nbrs[a] if w > a):
            for c in sorted(w for w in nbrs[b] if w > b):
                if c in nbrs[a] and c in nbrs[b] and b in nbrs[a]:
                    nbrs[b].discard(c)
                    nbrs[c].discard(b)
    return Graph(n, [(u, v) for u in range(n) for v in nbrs[u] if u < v])


def random_regular(n: int, r: int, seed: int = 0, attempts: int = REGULAR_ATTEMPTS) -> Graph:
    """Uniform-ish ``r``-regular graph by stub pairing with partial restarts."""
    if (n * r) % 2 or not 0 <= r < max(n, 1):
        raise BadParameter(f"no {r}-regular simple graph on {n} vertices")
    rng = random.Random(seed)
    for _ in range(attempts):
        edges = _try_pairing(n, r, rng)
        if edges is not None:
            return Graph(n, sorted(edges))
    raise GenerationFailed(f"no {r}-regular graph on {n} vertices after {attempts} attempts")


def _try_pairing(n: int, r: int, rng: random.Random) -> set[tuple[int, int]] | None:
    edges: set[tuple[int, int]] = set()
    stubs = [v for v in range(n) for _ in range(r)]
    while stubs:
        rng.shuffle(stubs)
        leftover: list[int] = []
        for a, b in zip(stubs[::2], stubs[1::2]):
            e = (min(a, b), max(a, b))
            if a != b and e not in edges:
                edges.add(e)
            else:
                leftover += [a, b]
        # give up early when no valid pair remains among the leftovers
        distinct = sorted(set(leftover))
        if not any(
            (u, v) not in edges for u, v in itertools.combinations(distinct, 2)
        ):
            return None if leftover else edges
        stubs = leftover
    return edges


def parse_spec(spec: str, seed: int = 0) -> Graph:
    """Build a graph from a CLI spec such as ``gnp:20,0.2`` or ``petersen``."""
    name, _, args = spec.partition(":")
    params = [a for a in args.split(",") if a] if args else []
    try:
        if name == "petersen" and not params:
            return petersen()
        if name == "cycle" and len(params) == 1:
            return cycle(int(params[0]))
        if name == "path" and len(params) == 1:
            return path(int(params[0]))
        if name == "complete" and len(params) == 1:
            return complete(int(params[0]))
        if name == "gnp" and len(params) == 2:
            return gnp(int(params[0]), float(params[1]), seed)
        if name in ("trifree", "triangle_free_gnp") and len(params) == 2:
            return triangle_free_gnp(int(params[0]), float(params[1]), seed)
        if name in ("regular", "random_regular") and len(params) == 2:
            return random_regular(int(params[0]), int(params[1]), seed)
    except ValueError as exc:
        raise BadParameter(f"bad generator spec {spec!r}: {exc}") from None
    raise BadParameter(f"unknown generator spec {spec!r}")
