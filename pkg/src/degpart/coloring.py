"""Proper colorings built on top of the partition engine.

Each driver picks degree targets, partitions the graph, and colors the parts
with disjoint palettes, so the color count is the sum of per-part counts.

* ``triangle_free_color``: targets of 2 (plus one target-0 part when
  ``max_degree % 3 == 2``). Parts of a triangle-free graph are then unions of
  paths and take 2 colors each.
* ``chromatic_upper``: targets of ``r`` on ``K_{r+1}``-free graphs, plus
  independent sets for the remainder of ``max_degree + 2`` modulo ``r + 1``.
  Every component of an ``r``-part is ``(r-1)``-degenerate and takes ``r``
  colors greedily.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .engine import Instance, SolveConfig, solve
from .errors import BadParameter, InvariantViolation, NotCliqueFree, NotTriangleFree
from .graph import (
    Graph,
    degeneracy_order,
    has_clique,
    induced_components,
    is_complete,
    max_degree,
)
from .verify import verify_coloring, verify_partition


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class ColoringPlan:
    delta: int
    r: tuple[int, ...]
    color_budget: tuple[int, ...]
    claimed_total: int

    def __post_init__(self):
        if len(self.r) != len(self.color_budget):
            raise ValueError("one budget per part")
        if self.claimed_total != sum(self.color_budget):
            raise ValueError("claimed total must equal the sum of budgets")
        if sum(self.r) < self.delta + 2 - self.k:
            raise BadParameter(
                f"targets {self.r} do not reach {self.delta} + 2 - {self.k}"
            )

    @property
    def k(self) -> int:
        return len(self.r)

    @property
    def triangle_free_total(self) -> int:
        """Colors needed when every target-2 part is a union of paths."""
        return sum(2 if ri == 2 else 1 for ri in self.r)

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "r": list(self.r),
            "color_budget": list(self.color_budget),
            "claimed_total": self.claimed_total,
        }


def kostochka_plan(delta: int, economical: bool = True) -> ColoringPlan:
    """``ceil((delta+2)/3)`` parts of target 2.

    With ``economical`` and ``delta % 3 == 2`` the last part gets target 0,
    an independent set with a single color.
    """
    k = _ceil_div(delta + 2, 3)
    r = [2] * k
    budget = [3] * k
    if economical and delta % 3 == 2:
        r[-1] = 0
        budget[-1] = 1
    return ColoringPlan(delta, tuple(r), tuple(budget), sum(budget))


def clique_free_plan(delta: int, r: int, economical: bool = True) -> ColoringPlan:
    if r < 2:
        raise BadParameter(f"clique-free plans need r >= 2, got {r}")
    if not economical:
        k = _ceil_div(delta + 2, r + 1)
        return ColoringPlan(delta, (r,) * k, (r,) * k, r * k)
    full = (delta + 2) // (r + 1)
    zeros = delta + 2 - (r + 1) * full
    targets = (r,) * full + (0,) * zeros
    budget = (r,) * full + (1,) * zeros
    return ColoringPlan(delta, targets, budget, sum(budget))


@dataclass
class PartColoring:
    colors: dict[int, int]
    used: int
    flagged: list[tuple[int, ...]] = field(default_factory=list)


def color_part(g: Graph, part: Iterable[int], budget: int) -> PartColoring:
    """Proper coloring of ``G[part]`` with local colors ``0, 1, ...``.

    A component isomorphic to ``K_{budget+1}`` gets ``budget + 1`` colors and is
    reported in ``flagged``; every other component is colored greedily in
    reverse min-degree peeling order, which uses at most degeneracy + 1 colors.
    """
    colors: dict[int, int] = {}
    flagged = []
    used = 0
    for comp in induced_components(g, part):
        if len(comp) == budget + 1 and is_complete(g, comp):
            flagged.append(comp)
            for c, v in enumerate(comp):
                colors[v] = c
            used = max(used, len(comp))
            continue
        order, _ = degeneracy_order(g, comp)
        for v in reversed(order):
            taken = {colors[u] for u in g.adj[v] if u in colors}
            c = 0
            while c in taken:
                c += 1
            colors[v] = c
            used = max(used, c + 1)
    return PartColoring(colors, used, flagged)


@dataclass
class ColoringResult:
    colors: list[int]
    used: int
    bound: int
    plan: ColoringPlan
    parts: list[tuple[int, ...]]
    moves: int = 0

    def as_dict(self) -> dict:
        return {
            "colors": self.colors,
            "used": self.used,
            "bound": self.bound,
            "plan": self.plan.as_dict(),
            "proper": True,
        }


def _color_with_plan(
    g: Graph, plan: ColoringPlan, budgets: list[int], bound: int, seed: int, config
) -> ColoringResult:
    inst = Instance.build(g, plan.r)
    part, trace = solve(inst, seed, config)
    report = verify_partition(inst, part)
    if not report.ok:
        raise InvariantViolation(f"partition failed verification: {report.violations[:3]}", trace)
    raw = [0] * g.n
    offset = 0
    for i, members in enumerate(part.parts()):
        pc = color_part(g, members, budgets[i])
        if pc.flagged or pc.used > budgets[i]:
            raise InvariantViolation(
                f"part {i} needed {pc.used} colors over budget {budgets[i]}", trace
            )
        for v, c in pc.colors.items():
            raw[v] = offset + c
        offset += budgets[i]
    palette = {c: idx for idx, c in enumerate(sorted(set(raw)))}
    colors = [palette[c] for c in raw]
    if not verify_coloring(g, colors):
        raise InvariantViolation("driver produced an improper coloring", trace)
    used = len(palette)
    if used > bound:
        raise InvariantViolation(f"used {used} colors above the bound {bound}", trace)
    return ColoringResult(colors, used, bound, plan, part.parts(), trace.moves)


def triangle_free_bound(delta: int, economical: bool = True) -> int:
    return kostochka_plan(delta, economical).triangle_free_total


def triangle_free_color(
    g: Graph, economical: bool = True, seed: int = 0, config: SolveConfig | None = None
) -> ColoringResult:
    if has_clique(g, 3):
        raise NotTriangleFree("graph contains a triangle")
    delta = max_degree(g)
    plan = kostochka_plan(delta, economical)
    budgets = [2 if ri == 2 else 1 for ri in plan.r]
    return _color_with_plan(g, plan, budgets, plan.triangle_free_total, seed, config)


def clique_free_bound(delta: int, r: int, economical: bool = True) -> int:
    return clique_free_plan(delta, r, economical).claimed_total


def chromatic_upper(
    g: Graph, r: int, economical: bool = True, seed: int = 0, config: SolveConfig | None = None
) -> ColoringResult:
    """Color a ``K_{r+1}``-free graph with at most
    ``max_degree + 2 - (max_degree + 2) // (r + 1)`` colors (economical plan)."""
    if r < 2:
        raise BadParameter(f"r must be at least 2, got {r}")
    if has_clique(g, r + 1):
        raise NotCliqueFree(f"graph contains K_{r + 1}")
    delta = max_degree(g)
    plan = clique_free_plan(delta, r, economical)
    result = _color_with_plan(g, plan, list(plan.color_budget), plan.claimed_total, seed, config)
    for ri, members in zip(plan.r, result.parts):
        if ri == 0:
            continue
        for comp in induced_components(g, members):
            if degeneracy_order(g, comp)[1] > ri - 1:
                raise InvariantViolation(f"component of an r={ri} part is not {ri - 1}-degenerate")
    return result

