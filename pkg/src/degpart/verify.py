"""Independent checkers and brute-force oracles.

Nothing here touches the engine's caches or ``graph``'s helper routines:
connectivity and degrees are recomputed from raw adjacency so a bug on the
optimized path cannot hide itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import SizeGuardExceeded
from .graph import Graph
from .permissible import EmptyFamily, NonCompleteRegularFamily

ORACLE_LIMIT = 2_000_000
CHROMATIC_LIMIT = 10


@dataclass
class Violation:
    part: int
    kind: str  # "degree_cap" or "forbidden_component"
    witness: int | tuple[int, ...]

    def as_dict(self) -> dict:
        return {"part": self.part, "kind": self.kind, "witness": self.witness}


@dataclass
class ValidityReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _assignment(p) -> list[int]:
    return list(p.assign) if hasattr(p, "assign") else list(p)


def _components(adj, verts: list[int]) -> list[list[int]]:
    inside = set(verts)
    label: dict[int, int] = {}
    comps: list[list[int]] = []
    for v in verts:
        if v in label:
            continue
        label[v] = len(comps)
        comp, frontier = [v], [v]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w in inside and w not in label:
                        label[w] = label[v]
                        comp.append(w)
                        nxt.append(w)
            frontier = nxt
        comps.append(sorted(comp))
    return comps


def _forbidden(fam, g: Graph, comp: list[int], local_deg: Mapping[int, int]) -> bool:
    if isinstance(fam, EmptyFamily):
        return False
    if type(fam) is NonCompleteRegularFamily:
        # non-complete: some pair inside comp is non-adjacent
        regular = all(local_deg[v] == fam.r for v in comp)
        return regular and len(comp) != fam.r + 1
    return fam.contains(g, comp)


def verify_partition(inst, p) -> ValidityReport:
    """Degree caps per vertex, then forbidden components per part."""
    g = inst.g
    assign = _assignment(p)
    report = ValidityReport()
    if len(assign) != g.n:
        raise ValueError("assignment does not cover the vertex set")
    k = len(inst.r)
    buckets: list[list[int]] = [[] for _ in range(k)]
    for v, a in enumerate(assign):
        buckets[a].append(v)
    local_deg = {}
    for v in range(g.n):
        local_deg[v] = sum(1 for u in g.adj[v] if assign[u] == assign[v])
    for i in range(k):
        for v in buckets[i]:
            if local_deg[v] > inst.r[i]:
                report.violations.append(Violation(i, "degree_cap", v))
    if inst.mode == "lovasz":
        return report
    for i in range(k):
        for comp in _components(g.adj, buckets[i]):
            if _forbidden(inst.families[i], g, comp, local_deg):
                report.violations.append(Violation(i, "forbidden_component", tuple(comp)))
    return report


def verify_coloring(g: Graph, colors: Sequence[int] | Mapping[int, int]) -> bool:
    """True when no edge joins two vertices of the same color."""
    return all(colors[u] != colors[v] for u in range(g.n) for v in g.adj[u] if u < v)


def _valid_assignment(inst, assign: Sequence[int]) -> bool:
    g = inst.g
    deg = [0] * g.n
    for u in range(g.n):
        for w in g.adj[u]:
            if assign[w] == assign[u]:
                deg[u] += 1
        if deg[u] > inst.r[assign[u]]:
            return False
    if inst.mode == "lovasz":
        return True
    for i, fam in enumerate(inst.families):
        if isinstance(fam, EmptyFamily):
            continue
        verts = [v for v in range(g.n) if assign[v] == i]
        local = {v: deg[v] for v in verts}
        if any(_forbidden(fam, g, comp, local) for comp in _components(g.adj, verts)):
            return False
    return True


def oracle_partition_exists(inst) -> bool:
    """Exhaustive search over all ``k**n`` assignments."""
    n, k = inst.g.n, len(inst.r)
    if k ** n > ORACLE_LIMIT:
        raise SizeGuardExceeded(f"{k}^{n} assignments exceed the oracle limit {ORACLE_LIMIT}")
    if n == 0:
        return True
    symmetric = len(set(inst.r)) == 1 and len(set(inst.families)) == 1
    # with interchangeable parts vertex 0 may be pinned to part 0
    first = [0] if symmetric else range(k)
    for head in first:
        for tail in itertools.product(range(k), repeat=n - 1):
            if _valid_assignment(inst, (head,) + tail):
                return True
    return False


def oracle_chromatic(g: Graph) -> int:
    """Chromatic number by backtracking over increasing color counts."""
    if g.n > CHROMATIC_LIMIT:
        raise SizeGuardExceeded(f"chromatic oracle limited to {CHROMATIC_LIMIT} vertices")
    if g.n == 0:
        return 0
    order = sorted(range(g.n), key=lambda v: -len(g.adj[v]))
    colors = [-1] * g.n

    def place(idx: int, c: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        used = {colors[u] for u in g.adj[v]}
        for col in range(c):
            if col not in used:
                colors[v] = col
                if place(idx + 1, c):
                    return True
                colors[v] = -1
        return False

    for c in range(1, g.n + 1):
        if place(0, c):
            return c
    return g.n
