"""Finite simple graphs: the container type, named generators and the edge-list format.

Edge-list format::

    # comment
    4          <- vertex count
    0 1        <- one edge per line, 0 <= i < j < n
    1 2

Vertices are the integers ``0..n-1``. Parsing normalizes ``j i`` to ``i j``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable


class GraphError(ValueError):
    """Malformed graph data or an invalid generator request."""


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset
    # original vertex ids when this graph was cut out of a larger one
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("vertex count must be nonnegative")
        for e in self.edges:
            i, j = e
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if not (0 <= i < j < self.vertex_count):
                raise GraphError(f"edge {e} is not a sorted pair inside 0..{self.vertex_count - 1}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, labels=None) -> "Graph":
        seen = set()
        for a, b in edges:
            if a == b:
                raise GraphError(f"self-loop at vertex {a}")
            e = (a, b) if a < b else (b, a)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen), tuple(labels) if labels is not None else None)

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def adjacency(self) -> list:
        """Neighbor sets indexed by vertex."""
        adj = [set() for _ in range(self.vertex_count)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def degree(self, x: int) -> int:
        return sum(1 for e in self.edges if x in e)

    def label(self, x: int) -> int:
        return self.labels[x] if self.labels is not None else x

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return False
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.vertex_count

    def __repr__(self):
        return f"Graph(vertex_count={self.vertex_count}, edges={len(self.edges)})"


def induced_subgraph(g: Graph, vertices: Iterable) -> Graph:
    """Induced subgraph on ``vertices``, relabeled to 0..k-1 in increasing order.

    The returned graph's ``labels`` map new ids back to ids of ``g`` (composed
    with ``g.labels`` when present).
    """
    keep = sorted(set(vertices))
    pos = {x: i for i, x in enumerate(keep)}
    edges = [(pos[i], pos[j]) for i, j in g.edges if i in pos and j in pos]
    return Graph(len(keep), frozenset(edges), tuple(g.label(x) for x in keep))


def unit_sphere(g: Graph, x: int) -> Graph:
    """Induced subgraph on the neighbors of ``x``."""
    if not 0 <= x < g.vertex_count:
        raise GraphError(f"vertex {x} not in graph")
    return induced_subgraph(g, g.adjacency()[x])


def unit_ball(g: Graph, x: int) -> set:
    return g.adjacency()[x] | {x}


def remove_vertex(g: Graph, x: int) -> Graph:
    return induced_subgraph(g, (y for y in g.vertices if y != x))


def add_pyramid(g: Graph, u: int, v: int) -> Graph:
    """Attach a new vertex to both endpoints of the edge (u, v)."""
    a, b = min(u, v), max(u, v)
    if (a, b) not in g.edges:
        raise GraphError(f"({u}, {v}) is not an edge")
    n = g.vertex_count
    return Graph(n + 1, g.edges | {(a, n), (b, n)})


def erdos_renyi(n: int, p: float, rng: random.Random | None = None) -> Graph:
    rng = rng or random.Random()
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, frozenset(edges))


# --- named generators -------------------------------------------------------

_CUBE = [(0, 1), (0, 2), (0, 4), (1, 3), (1, 5), (2, 3), (2, 6), (3, 7),
         (4, 5), (4, 6), (5, 7), (6, 7)]

# antipodal pairs (0,2), (1,3), (4,5): vertices 0-3 form the equator
_OCTAHEDRON = [(0, 1), (0, 3), (0, 4), (0, 5), (1, 2), (1, 4), (1, 5),
               (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)]

# 0 top, 1-5 upper ring, 6-10 lower ring, 11 bottom
_ICOSAHEDRON = [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
                (1, 2), (2, 3), (3, 4), (4, 5), (1, 5),
                (1, 6), (1, 7), (2, 7), (2, 8), (3, 8), (3, 9), (4, 9), (4, 10), (5, 10), (5, 6),
                (6, 7), (7, 8), (8, 9), (9, 10), (6, 10),
                (6, 11), (7, 11), (8, 11), (9, 11), (10, 11)]

_DODECAHEDRON = [(0, 1), (0, 10), (0, 19), (1, 2), (1, 8), (2, 3), (2, 6), (3, 4),
                 (3, 19), (4, 5), (4, 17), (5, 6), (5, 15), (6, 7), (7, 8), (7, 14),
                 (8, 9), (9, 10), (9, 13), (10, 11), (11, 12), (11, 18), (12, 13),
                 (12, 16), (13, 14), (14, 15), (15, 16), (16, 17), (17, 18), (18, 19)]

# outer pentagon 0-4, spokes i -- i+5, inner pentagram
_PETERSEN = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
             (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
             (5, 7), (7, 9), (6, 9), (6, 8), (5, 8)]

_FIXED = {
    "tetrahedron": (4, [(i, j) for i in range(4) for j in range(i + 1, 4)]),
    "cube": (8, _CUBE),
    "octahedron": (6, _OCTAHEDRON),
    "dodecahedron": (20, _DODECAHEDRON),
    "icosahedron": (12, _ICOSAHEDRON),
    "petersen": (10, _PETERSEN),
}

# (v0, v1, v2) sanity counts for the embedded lists
_FIXED_COUNTS = {
    "tetrahedron": (4, 6, 4),
    "cube": (8, 12, 0),
    "octahedron": (6, 12, 8),
    "dodecahedron": (20, 30, 0),
    "icosahedron": (12, 30, 20),
    "petersen": (10, 15, 0),
}

# family -> minimum n
_FAMILIES = {"complete": 1, "cycle": 3, "star": 1, "path": 1, "wheel": 3}

GENERATOR_NAMES = tuple(_FAMILIES) + tuple(_FIXED)


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """Center 0 with ``n`` leaves (n edges)."""
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])


def path_graph(n: int) -> Graph:
    """``n`` vertices, ``n - 1`` edges."""
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def wheel_graph(n: int) -> Graph:
    """Hub 0 joined to a rim cycle 1..n."""
    rim = [(i, i % n + 1) for i in range(1, n + 1)]
    return Graph.from_edges(n + 1, rim + [(0, i) for i in range(1, n + 1)])


def generate(name: str, n: int | None = None) -> Graph:
    """Named graph. Families (complete, cycle, star, path, wheel) need ``n``."""
    if name in _FIXED:
        count, edges = _FIXED[name]
        return Graph.from_edges(count, edges)
    if name not in _FAMILIES:
        raise GraphError(f"unknown generator {name!r}; choose from {', '.join(GENERATOR_NAMES)}")
    if n is None:
        raise GraphError(f"generator {name!r} needs a size n")
    if n < _FAMILIES[name]:
        raise GraphError(f"{name} needs n >= {_FAMILIES[name]}, got {n}")
    return {
        "complete": complete_graph,
        "cycle": cycle_graph,
        "star": star_graph,
        "path": path_graph,
        "wheel": wheel_graph,
    }[name](n)


# --- edge-list text format --------------------------------------------------

def parse_graph(text: str) -> Graph:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise GraphError("missing vertex count line")
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise GraphError(f"line {lineno}: expected a vertex count, got {head!r}") from None
    if n < 0:
        raise GraphError(f"line {lineno}: negative vertex count")
    edges = set()
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'i j', got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex id in {line!r}") from None
        if a == b:
            raise GraphError(f"line {lineno}: self-loop at vertex {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"line {lineno}: vertex id out of range 0..{n - 1}")
        e = (min(a, b), max(a, b))
        if e in edges:
            raise GraphError(f"line {lineno}: duplicate edge {e}")
        edges.add(e)
    return Graph(n, frozenset(edges))


def serialize_graph(g: Graph) -> str:
    out = [str(g.vertex_count)]
    out.extend(f"{i} {j}" for i, j in g.sorted_edges())
    return "\n".join(out) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
