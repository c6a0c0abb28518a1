"""Families of forbidden components.

A family fixes a degree target ``r`` and answers three questions the engine
asks while destroying forbidden components: is this component a member, which
vertex can leave it without disconnecting it, and which vertex witnesses a
chain collision. Two families ship: ``EmptyFamily`` (nothing is forbidden, the
only choice for ``r <= 1``) and ``NonCompleteRegularFamily`` (connected
``r``-regular components other than ``K_{r+1}``).

Custom families subclass ``PermissibleFamily``. The engine cannot certify a
family in general; it checks every witness it receives and raises
``WitnessMissing`` when one cannot be produced.
"""

from __future__ import annotations

from typing import Iterable

from .errors import BadParameter, WitnessMissing
from .graph import Graph, articulation_points, degree_in, is_connected


class PermissibleFamily:
    kind = "abstract"

    def __init__(self, r: int):
        if r < 0:
            raise BadParameter("degree target must be non-negative")
        self.r = r

    def __eq__(self, other):
        return type(self) is type(other) and self.r == other.r

    def __hash__(self):
        return hash((type(self).__name__, self.r))

    def __repr__(self):
        return f"{type(self).__name__}(r={self.r})"

    @property
    def can_have_members(self) -> bool:
        return True

    def contains(self, g: Graph, comp: Iterable[int]) -> bool:
        raise NotImplementedError

    def degree_r_members(self, g: Graph, comp: frozenset[int]) -> list[int]:
        return sorted(v for v in comp if degree_in(g, comp, v) == self.r)

    def pick_removable(self, g: Graph, comp: Iterable[int], x: int | None = None) -> int:
        """Smallest degree-``r`` vertex ``y`` of ``comp`` with ``comp - y`` connected.

        When ``x`` is given, ``y`` must also differ from ``x`` and avoid its
        neighbourhood.
        """
        members = frozenset(comp)
        cut = articulation_points(g, members)
        banned = g.nbrs[x] | {x} if x is not None else frozenset()
        for y in self.degree_r_members(g, members):
            if y not in banned and y not in cut:
                return y
        raise WitnessMissing(
            f"{self!r}: no removable degree-{self.r} vertex in component of size "
            f"{len(members)} avoiding {x}"
        )

    def find_common_witness(self, g: Graph, b: Iterable[int], x_t: int, x_s: int) -> int:
        """Smallest ``z`` in ``b`` adjacent to both ``x_t`` and ``x_s`` that has
        degree ``r`` in ``G[b + x_s]``."""
        members = frozenset(b)
        whole = members | {x_s}
        for z in sorted(members & g.nbrs[x_t] & g.nbrs[x_s]):
            if degree_in(g, whole, z) == self.r:
                return z
        raise WitnessMissing(
            f"{self!r}: vertices {x_t} and {x_s} share no degree-{self.r} neighbour "
            f"in a set of size {len(members)}"
        )


class EmptyFamily(PermissibleFamily):
    kind = "empty"

    @property
    def can_have_members(self) -> bool:
        return False

    def contains(self, g: Graph, comp: Iterable[int]) -> bool:
        return False


class NonCompleteRegularFamily(PermissibleFamily):
    kind = "non_complete_regular"

    def __init__(self, r: int):
        if r <= 1:
            raise BadParameter(f"only the empty family is permissible for r={r}")
        super().__init__(r)

    def contains(self, g: Graph, comp: Iterable[int]) -> bool:
        members = frozenset(comp)
        size = len(members)
        # K_{r+1} is the only connected r-regular graph on r+1 vertices
        if size <= self.r + 1:
            return False
        r = self.r
        for v in members:
            if degree_in(g, members, v) != r:
                return False
        return is_connected(g, members)

    def degree_r_members(self, g: Graph, comp: frozenset[int]) -> list[int]:
        return sorted(comp)


def default_family(r: int) -> PermissibleFamily:
    return NonCompleteRegularFamily(r) if r >= 2 else EmptyFamily(r)


def make_family(kind: str, r: int) -> PermissibleFamily:
    if kind == "empty":
        return EmptyFamily(r)
    if kind == "non_complete_regular":
        return NonCompleteRegularFamily(r)
    raise BadParameter(f"unknown family kind {kind!r}")
