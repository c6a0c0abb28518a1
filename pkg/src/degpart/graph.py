"""Immutable simple undirected graphs and the structural queries the engine needs.

Vertex sets are passed around as any iterable of ids and returned as sorted
tuples, so results are deterministic and hashable.
"""

from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable, Sequence

from .errors import NotConnected, SizeGuardExceeded

VertexSet = tuple[int, ...]

MAX_CLIQUE_SIZE = 12


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``; ``nbrs[v]`` is the
    same set as a frozenset for O(1) membership tests.
    """

    __slots__ = ("n", "m", "adj", "nbrs")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            sets[u].add(v)
            sets[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in sets)
        self.nbrs: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in sets)
        self.m = sum(len(s) for s in sets) // 2

    def __setattr__(self, name, value):
        if hasattr(self, "m"):
            raise AttributeError("Graph is immutable")
        object.__setattr__(self, name, value)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def subgraph(self, s: Iterable[int]) -> tuple["Graph", VertexSet]:
        """Induced subgraph relabelled to ``0..len(s)-1``, plus the old ids."""
        verts = vset(s)
        index = {v: i for i, v in enumerate(verts)}
        edges = [
            (index[u], index[w])
            for u in verts
            for w in self.adj[u]
            if u < w and w in index
        ]
        return Graph(len(verts), edges), verts


def vset(s: Iterable[int]) -> VertexSet:
    return tuple(sorted(set(s)))


def max_degree(g: Graph) -> int:
    return max((len(a) for a in g.adj), default=0)


def min_degree(g: Graph) -> int:
    return min((len(a) for a in g.adj), default=0)


def degree_in(g: Graph, s: Iterable[int], v: int) -> int:
    """Number of neighbours of ``v`` inside ``s``; ``v`` need not lie in ``s``."""
    s = s if isinstance(s, (set, frozenset)) else set(s)
    return sum(1 for u in g.adj[v] if u in s)


def degree_r_vertices(g: Graph, s: Iterable[int], r: int) -> VertexSet:
    """Vertices of degree exactly ``r`` in ``G[s]``."""
    members = frozenset(s)
    return tuple(v for v in sorted(members) if degree_in(g, members, v) == r)


def induced_components(g: Graph, s: Iterable[int]) -> list[VertexSet]:
    """Connected components of ``G[s]``, ordered by minimum vertex id."""
    members = set(s)
    seen: set[int] = set()
    out: list[VertexSet] = []
    for root in sorted(members):
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w in members and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append(tuple(sorted(comp)))
    return out


def is_connected(g: Graph, s: Iterable[int]) -> bool:
    return len(induced_components(g, s)) <= 1


def articulation_points(g: Graph, s: Iterable[int]) -> set[int]:
    """Cut vertices of ``G[s]`` by an iterative lowpoint search."""
    members = set(s)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cut: set[int] = set()
    counter = 0
    for root in sorted(members):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, -1, iter(g.adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in members or w == parent:
                    continue
                if w in disc:
                    if disc[w] < low[u]:
                        low[u] = disc[w]
                    continue
                disc[w] = low[w] = counter
                counter += 1
                stack.append((w, u, iter(g.adj[w])))
                advanced = True
                break
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            if low[u] < low[parent]:
                low[parent] = low[u]
            if parent == root:
                root_children += 1
            elif low[u] >= disc[parent]:
                cut.add(parent)
        if root_children >= 2:
            cut.add(root)
    return cut


def non_cut_vertices(g: Graph, s: Iterable[int]) -> VertexSet:
    """Vertices ``v`` of ``s`` such that ``G[s - v]`` stays connected.

    Raises NotConnected if ``G[s]`` itself is disconnected.
    """
    members = vset(s)
    if not is_connected(g, members):
        raise NotConnected(f"induced subgraph on {len(members)} vertices is disconnected")
    cut = articulation_points(g, members)
    return tuple(v for v in members if v not in cut)


def degeneracy_order(g: Graph, s: Iterable[int] | None = None) -> tuple[list[int], int]:
    """Min-degree peeling order of ``G[s]`` and the degeneracy it witnesses.

    Ties are broken by smallest vertex id. The returned degeneracy is the
    largest degree a vertex had at the moment it was removed.
    """
    members = set(range(g.n)) if s is None else set(s)
    deg = {v: degree_in(g, members, v) for v in members}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed: set[int] = set()
    order: list[int] = []
    degeneracy = 0
    while heap:
        d, v = heapq.heappop(heap)
        if v in removed or d != deg[v]:
            continue
        removed.add(v)
        order.append(v)
        degeneracy = max(degeneracy, d)
        for w in g.adj[v]:
            if w in members and w not in removed:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return order, degeneracy


def is_complete(g: Graph, s: Iterable[int]) -> bool:
    members = frozenset(s)
    need = len(members) - 1
    return all(degree_in(g, members, v) == need for v in members)


def is_regular(g: Graph, s: Iterable[int], r: int) -> bool:
    members = frozenset(s)
    return all(degree_in(g, members, v) == r for v in members)


def has_clique(g: Graph, size: int) -> bool:
    """Whether ``g`` contains ``K_size``; exponential, so ``size`` is capped."""
    if size > MAX_CLIQUE_SIZE:
        raise SizeGuardExceeded(f"clique size {size} exceeds guard {MAX_CLIQUE_SIZE}")
    if size <= 0:
        return True
    if size == 1:
        return g.n >= 1
    if size == 2:
        return g.m >= 1

    def extend(cands: Sequence[int], need: int) -> bool:
        if need == 0:
            return True
        for i, v in enumerate(cands):
            if len(cands) - i < need:
                return False
            nxt = [w for w in cands[i + 1:] if w in g.nbrs[v]]
            if len(nxt) >= need - 1 and extend(nxt, need - 1):
                return True
        return False

    # only vertices of degree >= size-1 can sit in a K_size
    cands = [v for v in range(g.n) if len(g.adj[v]) >= size - 1]
    return extend(cands, size)
