"""DIMACS ``.col`` and plain edge-list reading and writing."""

from __future__ import annotations

import re
from pathlib import Path

from .errors import ParseError
from .graph import Graph

FORMATS = ("dimacs", "edgelist")

_N_HEADER = re.compile(r"#\s*n\s+(\d+)\s*$")


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {token!r}") from None


def _parse_dimacs(text: str) -> Graph:
    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"line {lineno}: malformed problem line {line!r}")
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate problem line")
            n = _int(parts[2], lineno)
            _int(parts[3], lineno)
            if n < 0:
                raise ParseError(f"line {lineno}: negative vertex count")
        elif tag == "e":
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: malformed edge line {line!r}")
            u, v = _int(parts[1], lineno), _int(parts[2], lineno)
            if u == v:
                raise ParseError(f"line {lineno}: loop at vertex {u}")
            if n is not None and not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: vertex out of range 1..{n}")
            if n is None and (u < 1 or v < 1):
                raise ParseError(f"line {lineno}: DIMACS vertex ids start at 1")
            edges.add((min(u, v) - 1, max(u, v) - 1))
        else:
            raise ParseError(f"line {lineno}: unknown line type {tag!r}")
    if n is None:
        if edges:
            raise ParseError("edge lines without a 'p edge' problem line")
        n = 0
    return Graph(n, sorted(edges))


def _parse_edgelist(text: str) -> Graph:
    edges: set[tuple[int, int]] = set()
    n = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        header = _N_HEADER.match(raw.strip())
        if header:
            n = max(n, int(header.group(1)))
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        u, v = _int(parts[0], lineno), _int(parts[1], lineno)
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex id")
        if u == v:
            raise ParseError(f"line {lineno}: loop at vertex {u}")
        edges.add((min(u, v), max(u, v)))
        n = max(n, u + 1, v + 1)
    return Graph(n, sorted(edges))


def load_graph(text: str, format: str = "dimacs") -> Graph:
    if format == "dimacs":
        return _parse_dimacs(text)
    if format == "edgelist":
        return _parse_edgelist(text)
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def emit_graph(g: Graph, format: str = "dimacs") -> str:
    edges = g.edges()
    if format == "dimacs":
        lines = [f"p edge {g.n} {g.m}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in edges]
    elif format == "edgelist":
        # the "# n" header keeps trailing isolated vertices
        lines = [f"# n {g.n}"] + [f"{u} {v}" for u, v in edges]
    else:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    return "\n".join(lines) + "\n"


def guess_format(path: str | Path) -> str:
    return "dimacs" if str(path).endswith((".col", ".dimacs")) else "edgelist"


def read_graph(path: str | Path, format: str | None = None) -> Graph:
    return load_graph(Path(path).read_text(), format or guess_format(path))
