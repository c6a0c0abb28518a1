import pytest

from degpart import generators as gen
from degpart.graph import Graph


def c4() -> Graph:
    return gen.cycle(4)


def two_triangles() -> Graph:
    """Triangles 0-1-2 and 0-3-4 sharing vertex 0."""
    return Graph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])


# A 13-vertex graph with max degree 4 whose partition below forces, under
# targets (2, 2), a chain through four 4-cycles that collides with the first
# remainder {1, 2, 3} and is repaired by moving X = {8}, then 11 in, then 1 out.
COLLISION_EDGES = [
    (0, 1), (1, 2), (2, 3), (3, 0),
    (4, 5), (5, 6), (0, 4), (0, 6),
    (7, 8), (8, 9), (5, 7), (5, 9),
    (10, 11), (11, 12), (8, 10), (8, 12),
    (11, 1), (11, 3),
]
COLLISION_START = [0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 1]


@pytest.fixture
def collision_graph() -> Graph:
    return Graph(13, COLLISION_EDGES)


def brute_connected(g: Graph, verts) -> bool:
    """Connectivity of G[verts] by repeated edge relaxation; no BFS queue."""
    verts = set(verts)
    if len(verts) <= 1:
        return True
    reach = {min(verts)}
    changed = True
    while changed:
        changed = False
        for u, v in g.edges():
            if u in verts and v in verts and (u in reach) != (v in reach):
                reach |= {u, v}
                changed = True
    return reach == verts


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.SUMMARY:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.SUMMARY):
            terminalreporter.write_line(line)
