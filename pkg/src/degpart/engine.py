"""Vertex partitioning with degree caps and forbidden components.

Given targets ``r_1..r_k`` with ``sum(r) >= max_degree + 2 - k`` the engine
finds parts ``V_1..V_k`` such that every ``G[V_i]`` has maximum degree at most
``r_i`` and no component of ``G[V_i]`` belongs to the family attached to part
``i``. The search is a local descent on the potential ``(f, c, p)``:

* ``f`` = sum over parts of ``|E(G[V_i])| - r_i * |V_i|``,
* ``c`` = total number of components over all parts,
* ``p`` = number of components that belong to their part's family,

compared lexicographically. Overflowing vertices are moved out greedily
(each such move lowers ``f``). A forbidden component is attacked by a chain of
``f``-neutral moves that either hits a strict improvement or revisits a
component remainder; on such a collision the partition is rolled back and a
short repair sequence lowers ``f`` strictly.

In "lovasz" mode families are empty and only the degree caps are enforced, which
needs the weaker ``sum(r) >= max_degree + 1 - k``.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    ChainOverflow,
    HypothesisNotMet,
    InvariantViolation,
    NoEscape,
    WitnessMissing,
)
from .graph import Graph, max_degree
from .permissible import (
    EmptyFamily,
    NonCompleteRegularFamily,
    PermissibleFamily,
    default_family,
)

MODES = ("main", "lovasz")


class Potential(NamedTuple):
    """``(f, c, p)``; tuple comparison is the lexicographic order we need."""

    f: int
    c: int
    p: int

    def as_dict(self) -> dict[str, int]:
        return {"f": self.f, "c": self.c, "p": self.p}


@dataclass(frozen=True)
class Instance:
    g: Graph
    r: tuple[int, ...]
    families: tuple[PermissibleFamily, ...]
    mode: str = "main"

    def __post_init__(self):
        k = len(self.r)
        if k < 1:
            raise ValueError("need at least one part")
        if any(ri < 0 for ri in self.r):
            raise ValueError("degree targets must be non-negative")
        if len(self.families) != k:
            raise ValueError("need exactly one family per part")
        for ri, fam in zip(self.r, self.families):
            if fam.r != ri:
                raise ValueError(f"family {fam!r} attached to a part with target {ri}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "lovasz" and any(f.can_have_members for f in self.families):
            raise ValueError("lovasz mode takes empty families only")
        need = self.threshold
        if sum(self.r) < need:
            raise HypothesisNotMet(
                f"sum of targets {sum(self.r)} < {need} = max degree "
                f"{max_degree(self.g)} + {2 if self.mode == 'main' else 1} - {k} ({self.mode} mode)"
            )

    @classmethod
    def build(
        cls,
        g: Graph,
        r: Sequence[int],
        mode: str = "main",
        families: Sequence[PermissibleFamily] | None = None,
    ) -> "Instance":
        r = tuple(int(x) for x in r)
        if families is None:
            if mode == "lovasz":
                families = [EmptyFamily(x) for x in r]
            else:
                families = [default_family(x) for x in r]
        return cls(g, r, tuple(families), mode)

    @property
    def k(self) -> int:
        return len(self.r)

    @property
    def threshold(self) -> int:
        return max_degree(self.g) + (2 if self.mode == "main" else 1) - self.k


class Partition:
    """Assignment of vertices to parts with a neighbour-count cache.

    ``counts[v][i]`` is the number of neighbours of ``v`` in part ``i``, so the
    degree of ``v`` inside any part is an O(1) lookup.
    """

    def __init__(self, g: Graph, k: int, assignment: Sequence[int]):
        if len(assignment) != g.n:
            raise ValueError("assignment length differs from vertex count")
        self.g = g
        self.k = k
        self.assign: list[int] = []
        self.members: list[set[int]] = []
        self.counts: list[list[int]] = []
        self.restore(assignment)

    def restore(self, assignment: Sequence[int]) -> None:
        g, k = self.g, self.k
        if any(not 0 <= a < k for a in assignment):
            raise ValueError("part index out of range")
        self.assign = list(assignment)
        self.members = [set() for _ in range(k)]
        for v, a in enumerate(self.assign):
            self.members[a].add(v)
        self.counts = [[0] * k for _ in range(g.n)]
        for v in range(g.n):
            row = self.counts[v]
            for u in g.adj[v]:
                row[self.assign[u]] += 1

    def snapshot(self) -> tuple[int, ...]:
        return tuple(self.assign)

    def copy(self) -> "Partition":
        return Partition(self.g, self.k, self.assign)

    def part_of(self, v: int) -> int:
        return self.assign[v]

    def degree(self, v: int, part: int | None = None) -> int:
        return self.counts[v][self.assign[v] if part is None else part]

    def parts(self) -> list[tuple[int, ...]]:
        return [tuple(sorted(m)) for m in self.members]

    def move(self, x: int, to: int) -> None:
        src = self.assign[x]
        if src == to:
            return
        self.assign[x] = to
        self.members[src].discard(x)
        self.members[to].add(x)
        counts = self.counts
        for u in self.g.adj[x]:
            row = counts[u]
            row[src] -= 1
            row[to] += 1

    def component(self, v: int, part: int | None = None, without: int | None = None) -> set[int]:
        """Component of ``v`` in ``G[V_part]`` (ignoring ``without``)."""
        part = self.assign[v] if part is None else part
        assign, adj = self.assign, self.g.adj
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen and w != without and assign[w] == part:
                    seen.add(w)
                    stack.append(w)
        return seen

    def components(self, part: int) -> list[set[int]]:
        out = []
        seen: set[int] = set()
        for v in sorted(self.members[part]):
            if v not in seen:
                comp = self.component(v, part)
                seen |= comp
                out.append(comp)
        return out

    def check_cache(self) -> None:
        fresh = Partition(self.g, self.k, self.assign)
        if fresh.counts != self.counts or fresh.members != self.members:
            raise InvariantViolation("partition degree cache diverged from recomputation")


@dataclass
class TraceEvent:
    tag: str
    vertex: int | None
    src: int | None
    dst: int | None
    potential: Potential
    commit: bool

    def as_dict(self) -> dict:
        return {
            "tag": self.tag,
            "vertex": self.vertex,
            "from": self.src,
            "to": self.dst,
            "potential": self.potential.as_dict(),
            "commit": self.commit,
        }


TAGS = ("overflow", "chain-step", "chain-commit", "repair-X", "repair-xt", "repair-z", "rollback")


@dataclass
class MoveTrace:
    initial: Potential | None = None
    events: list[TraceEvent] = field(default_factory=list)
    chains: int = 0
    collisions: int = 0
    max_chain: int = 0

    def log(self, tag, vertex, src, dst, potential, commit=False) -> None:
        self.events.append(TraceEvent(tag, vertex, src, dst, potential, commit))

    @property
    def moves(self) -> int:
        return sum(1 for e in self.events if e.vertex is not None)

    @property
    def commits(self) -> list[TraceEvent]:
        return [e for e in self.events if e.commit]

    def is_monotone(self) -> bool:
        """Commit potentials strictly decrease, starting below the initial one."""
        prev = self.initial
        for e in self.commits:
            if prev is not None and not e.potential < prev:
                return False
            prev = e.potential
        return True


STARTS = ("greedy", "single", "random")


@dataclass
class SolveConfig:
    """``start`` picks the initial partition: the greedy one, everything in
    the first active part, or a seeded random one. The last two exist to
    stress the search; zero-target parts are peeled identically in all three.
    ``debug`` recomputes caches and the potential after every move."""

    chain_cap: int | None = None
    debug: bool = False
    start: str = "greedy"


# --------------------------------------------------------------------------
# stateless operations


def potential(inst: Instance, part: Partition) -> Potential:
    """The potential recomputed from scratch."""
    g = inst.g
    f = c = p = 0
    for i in range(inst.k):
        members = part.members[i]
        edges = sum(part.counts[v][i] for v in members) // 2
        f += edges - inst.r[i] * len(members)
        comps = part.components(i)
        c += len(comps)
        fam = inst.families[i]
        if fam.can_have_members:
            p += sum(1 for comp in comps if fam.contains(g, comp))
    return Potential(f, c, p)


def active_parts(inst: Instance) -> list[int]:
    """Parts the local search may move vertices into.

    In main mode parts with target 0 are filled up front by maximal
    independent sets and then frozen; see ``initial_partition``.
    """
    if inst.mode == "main" and any(inst.r):
        return [i for i, ri in enumerate(inst.r) if ri > 0]
    return list(range(inst.k))


def initial_partition(inst: Instance, seed: int = 0, start: str = "greedy") -> Partition:
    """Greedy start: each vertex goes to the part where it has most slack.

    Vertices are visited in id order (a seeded shuffle when ``seed`` is
    non-zero); slack is ``r_i`` minus the neighbours already placed in part
    ``i``, ties to the lowest index. In main mode every part with target 0
    first receives a maximal independent set of the still unplaced vertices.
    Each such set dominates the rest, so the maximum degree of what remains
    drops by one per zero part and the remaining parts still meet the
    hypothesis on the remaining graph.
    """
    g = inst.g
    order = list(range(g.n))
    if seed:
        random.Random(seed).shuffle(order)
    assign = [-1] * g.n
    if inst.mode == "main":
        for i, ri in enumerate(inst.r):
            if ri:
                continue
            for v in order:
                if assign[v] == -1 and all(assign[u] != i for u in g.adj[v]):
                    assign[v] = i
    parts = active_parts(inst)
    if start == "single":
        return Partition(g, inst.k, [parts[0] if a == -1 else a for a in assign])
    if start == "random":
        rng = random.Random(seed)
        return Partition(g, inst.k, [rng.choice(parts) if a == -1 else a for a in assign])
    if start != "greedy":
        raise ValueError(f"unknown start {start!r}; expected one of {STARTS}")
    placed = [[0] * inst.k for _ in range(g.n)]
    for v in order:
        if assign[v] != -1:
            for u in g.adj[v]:
                placed[u][assign[v]] += 1
    for v in order:
        if assign[v] != -1:
            continue
        best = max(parts, key=lambda i: (inst.r[i] - placed[v][i], -i))
        assign[v] = best
        for u in g.adj[v]:
            placed[u][best] += 1
    if -1 in assign:
        raise InvariantViolation("zero-target parts left vertices unplaced")
    return Partition(g, inst.k, assign)


def find_escape_part(
    inst: Instance,
    part: Partition,
    x: int,
    frm: int,
    allowed: Iterable[int] | None = None,
    prefer_positive: bool = False,
) -> int | None:
    """Part ``j != frm`` where ``x`` has at most ``r_j`` neighbours.

    Most slack wins, then (with ``prefer_positive``) targets ``r_j >= 1``,
    then the lowest index.
    """
    row = part.counts[x]
    best = None
    best_key = None
    for j in range(inst.k) if allowed is None else allowed:
        if j == frm:
            continue
        slack = inst.r[j] - row[j]
        if slack < 0:
            continue
        key = (-slack, prefer_positive and inst.r[j] == 0, j)
        if best_key is None or key < best_key:
            best, best_key = j, key
    return best


def find_bad_component(inst: Instance, part: Partition) -> tuple[int, frozenset[int]] | None:
    """Lowest part, then lowest component, whose component is in the family."""
    for i, fam in enumerate(inst.families):
        if not fam.can_have_members:
            continue
        for comp in part.components(i):
            if fam.contains(inst.g, comp):
                return i, frozenset(comp)
    return None


# --------------------------------------------------------------------------
# the search


@dataclass
class _ChainStep:
    part: int
    comp: frozenset[int]
    x: int
    snapshot: tuple[int, ...]
    potential: Potential


class Engine:
    """Mutable search state for one solve run."""

    def __init__(self, inst: Instance, part: Partition, config: SolveConfig | None = None,
                 trace: MoveTrace | None = None):
        self.inst = inst
        self.part = part
        self.config = config or SolveConfig()
        self.trace = trace if trace is not None else MoveTrace()
        self.pot = potential(inst, part)
        if self.trace.initial is None:
            self.trace.initial = self.pot
        self.allowed = active_parts(inst)
        cap = self.config.chain_cap
        self.chain_cap = cap if cap is not None else 10 * max(inst.g.n, 1) * inst.k

    # -- bookkeeping -------------------------------------------------------

    def _member(self, i: int, comp: set[int] | frozenset[int]) -> bool:
        fam = self.inst.families[i]
        if not fam.can_have_members:
            return False
        if type(fam) is NonCompleteRegularFamily:
            # comp is a full component of part i, so cached counts are its degrees
            r = fam.r
            if len(comp) <= r + 1:
                return False
            counts = self.part.counts
            return all(counts[v][i] == r for v in comp)
        return fam.contains(self.inst.g, comp)

    def move(self, x: int, to: int, tag: str, commit: bool = False) -> tuple[Potential, list[set[int]]]:
        """Move ``x`` to part ``to``, update the potential incrementally.

        Returns the new potential and the components of the target part that
        ``x`` touched before the move.
        """
        part, inst = self.part, self.inst
        src = part.assign[x]
        row = part.counts[x]
        df = (row[to] - inst.r[to]) - (row[src] - inst.r[src])

        old_comp = part.component(x, src)
        touched: list[set[int]] = []
        for u in part.g.adj[x]:
            if part.assign[u] == to and not any(u in t for t in touched):
                touched.append(part.component(u, to))
        p_before = self._member(src, old_comp) + sum(self._member(to, t) for t in touched)

        part.move(x, to)

        rest = old_comp - {x}
        pieces: list[set[int]] = []
        while rest:
            piece = part.component(next(iter(rest)), src)
            pieces.append(piece)
            rest -= piece
        merged = set().union(*touched) | {x}
        p_after = sum(self._member(src, q) for q in pieces) + self._member(to, merged)

        dc = len(pieces) - 1 + 1 - len(touched)
        dp = p_after - p_before
        self.pot = Potential(self.pot.f + df, self.pot.c + dc, self.pot.p + dp)
        if self.config.debug:
            part.check_cache()
            fresh = potential(inst, part)
            if fresh != self.pot:
                raise InvariantViolation(
                    f"incremental potential {self.pot} != recomputed {fresh}", self.trace
                )
        self.trace.log(tag, x, src, to, self.pot, commit)
        return self.pot, touched

    def rollback(self, snapshot: Sequence[int], pot: Potential) -> None:
        self.part.restore(snapshot)
        self.pot = pot
        self.trace.log("rollback", None, None, None, pot)

    def fail(self, message: str, cls=InvariantViolation):
        return cls(message, self.trace)

    # -- overflow ----------------------------------------------------------

    def reduce_overflow(self) -> int:
        """Move overflowing vertices out, lowest id first; returns move count."""
        part, r = self.part, self.inst.r
        heap = [v for v in range(part.g.n) if part.degree(v) > r[part.assign[v]]]
        heapq.heapify(heap)
        moves = 0
        while heap:
            x = heapq.heappop(heap)
            src = part.assign[x]
            if part.counts[x][src] <= r[src]:
                continue
            to = find_escape_part(self.inst, part, x, src, self.allowed)
            if to is None:
                raise self.fail(
                    f"vertex {x} overflows part {src} and has no escape part", NoEscape
                )
            before = self.pot
            self.move(x, to, "overflow", commit=True)
            if not self.pot.f < before.f:
                raise self.fail(f"overflow move of {x} did not lower f")
            moves += 1
            for u in part.g.adj[x]:
                if part.assign[u] == to and part.counts[u][to] > r[to]:
                    heapq.heappush(heap, u)
        return moves

    # -- chains ------------------------------------------------------------

    def chain_repair(self, start: tuple[int, frozenset[int]]) -> Potential:
        """Destroy the forbidden component ``start`` with a strict improvement."""
        inst, part, g = self.inst, self.part, self.inst.g
        entry = self.pot
        self.trace.chains += 1
        steps: list[_ChainStep] = []
        seen: dict[frozenset[int], int] = {}
        states: set[tuple] = set()
        i, comp = start
        prev_x: int | None = None
        while True:
            if len(steps) >= self.chain_cap:
                raise self.fail(
                    f"chain exceeded {self.chain_cap} steps without improvement", ChainOverflow
                )
            fam = inst.families[i]
            if not self._member(i, comp):
                raise self.fail(f"chain component in part {i} is not a family member")
            try:
                x = fam.pick_removable(g, comp, prev_x)
            except WitnessMissing as exc:
                raise self.fail(str(exc)) from exc
            state = (part.snapshot(), x)
            if state in states:
                raise self.fail("chain revisited a state without a collision", ChainOverflow)
            states.add(state)

            steps.append(_ChainStep(i, comp, x, part.snapshot(), self.pot))
            self.trace.max_chain = max(self.trace.max_chain, len(steps))
            seen[comp - {x}] = len(steps) - 1

            to = find_escape_part(inst, part, x, i, self.allowed, prefer_positive=True)
            if to is None:
                raise self.fail(f"chain vertex {x} has no escape part", NoEscape)
            pot, touched = self.move(x, to, "chain-step")
            if pot < entry:
                self.trace.events[-1].tag = "chain-commit"
                self.trace.events[-1].commit = True
                return pot
            if pot != entry:
                raise self.fail(
                    f"chain move of {x} into part {to} raised the potential {entry} -> {pot}",
                    ChainOverflow,
                )
            if len(touched) != 1:
                raise self.fail(f"chain vertex {x} joined {len(touched)} components at equal c")
            joined = frozenset(touched[0])
            nxt = joined | {x}
            if not self._member(to, nxt):
                raise self.fail("equal potential after a chain step but no new member")
            if joined in seen:
                return self._repair(steps, seen[joined], x, entry)
            prev_x, i, comp = x, to, nxt

    def _repair(self, steps: list[_ChainStep], s: int, x_t: int, entry: Potential) -> Potential:
        inst, part, g = self.inst, self.part, self.inst.g
        self.trace.collisions += 1
        st = steps[s]
        i_s, x_s = st.part, st.x
        r_s = inst.r[i_s]
        b = st.comp - {x_s}
        self.rollback(st.snapshot, st.potential)

        between = {steps[j].x for j in range(s + 1, len(steps) - 1)}
        xs = sorted(v for v in between if part.assign[v] == i_s)
        for a in xs:
            if any(w in g.nbrs[a] for w in xs):
                raise self.fail(f"repair set {xs} is not independent")
        for a in xs:
            if part.counts[a][i_s] < r_s:
                raise self.fail(f"repair vertex {a} has degree below {r_s} in part {i_s}")
            to = find_escape_part(inst, part, a, i_s, self.allowed)
            if to is None:
                raise self.fail(f"repair vertex {a} has no escape part", NoEscape)
            pot, _ = self.move(a, to, "repair-X")
            if pot < entry:
                self.trace.events[-1].commit = True
                return pot

        i_t = part.assign[x_t]
        if i_t == i_s:
            raise self.fail(f"collision vertex {x_t} already sits in part {i_s}")
        if part.counts[x_t][i_t] < inst.r[i_t]:
            raise self.fail(f"collision vertex {x_t} has degree below target in part {i_t}")
        if part.counts[x_t][i_s] != r_s:
            raise self.fail(
                f"collision vertex {x_t} would have degree {part.counts[x_t][i_s]} != {r_s} "
                f"in part {i_s}"
            )
        self.move(x_t, i_s, "repair-xt")

        try:
            z = inst.families[i_s].find_common_witness(g, b, x_t, x_s)
        except WitnessMissing as exc:
            raise self.fail(str(exc)) from exc
        if part.counts[z][i_s] < r_s + 1:
            raise self.fail(f"witness {z} is not overloaded in part {i_s}")
        to = find_escape_part(inst, part, z, i_s, self.allowed)
        if to is None:
            raise self.fail(f"witness {z} has no escape part", NoEscape)
        pot, _ = self.move(z, to, "repair-z", commit=True)
        if not pot.f < entry.f:
            raise self.fail(f"repair did not lower f: {entry} -> {pot}")
        return pot

    # -- driver ------------------------------------------------------------

    def run(self) -> None:
        while True:
            self.reduce_overflow()
            if self.inst.mode == "lovasz":
                return
            bad = find_bad_component(self.inst, self.part)
            if bad is None:
                return
            before = self.pot
            self.chain_repair(bad)
            if not self.pot < before:
                raise self.fail(f"chain repair did not improve {before} -> {self.pot}")


def reduce_overflow(inst: Instance, part: Partition, trace: MoveTrace | None = None) -> Partition:
    """Apply overflow moves in place until every vertex respects its cap."""
    Engine(inst, part, trace=trace).reduce_overflow()
    return part


def chain_repair(
    inst: Instance,
    part: Partition,
    start: tuple[int, Iterable[int]],
    trace: MoveTrace | None = None,
    config: SolveConfig | None = None,
) -> Partition:
    """Run one chain from the forbidden component ``start``, in place."""
    eng = Engine(inst, part, config, trace)
    eng.chain_repair((start[0], frozenset(start[1])))
    return part


def solve(inst: Instance, seed: int = 0, config: SolveConfig | None = None) -> tuple[Partition, MoveTrace]:
    """Partition ``inst.g``; the result always satisfies the degree caps and,
    in main mode, has no component in its part's family.

    Every commit in the returned trace lowers the potential strictly, which
    bounds the number of iterations.
    """
    config = config or SolveConfig()
    part = initial_partition(inst, seed, config.start)
    eng = Engine(inst, part, config)
    eng.run()
    return part, eng.trace
