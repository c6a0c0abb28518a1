"""Vertex partitions with per-part degree caps and forbidden components."""

from .coloring import (
    ColoringPlan,
    chromatic_upper,
    clique_free_plan,
    color_part,
    kostochka_plan,
    triangle_free_color,
)
from .engine import Instance, MoveTrace, Partition, Potential, SolveConfig, potential, solve
from .graph import Graph
from .graphio import emit_graph, load_graph
from .permissible import EmptyFamily, NonCompleteRegularFamily, PermissibleFamily
from .verify import oracle_chromatic, oracle_partition_exists, verify_coloring, verify_partition

__all__ = [
    "ColoringPlan",
    "EmptyFamily",
    "Graph",
    "Instance",
    "MoveTrace",
    "NonCompleteRegularFamily",
    "Partition",
    "PermissibleFamily",
    "Potential",
    "SolveConfig",
    "chromatic_upper",
    "clique_free_plan",
    "color_part",
    "emit_graph",
    "kostochka_plan",
    "load_graph",
    "oracle_chromatic",
    "oracle_partition_exists",
    "potential",
    "solve",
    "triangle_free_color",
    "verify_coloring",
    "verify_partition",
]
