"""Clique (Whitney) complexes of finite simple graphs.

A simplex is a strictly increasing tuple of vertex ids; that order is also its
orientation. Simplices are stored per dimension in lexicographic order and
the global ordering used by every operator is (dimension, vertex tuple).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .graph import Graph


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    graph: Graph
    simplices_by_dim: tuple
    index_of: dict = field(repr=False)
    # memo for derived operators and spectra; the complex itself never changes
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def f_vector(self) -> tuple:
        return tuple(len(s) for s in self.simplices_by_dim)

    @property
    def dimension(self) -> int:
        """Top dimension, -1 for the empty complex."""
        return len(self.simplices_by_dim) - 1

    @property
    def size(self) -> int:
        return sum(self.f_vector)

    @property
    def offsets(self) -> tuple:
        """Start of each dimension's block in the global ordering (plus the total)."""
        out = [0]
        for k in self.f_vector:
            out.append(out[-1] + k)
        return tuple(out)

    def simplices(self) -> list:
        """All simplices in global order."""
        return [s for layer in self.simplices_by_dim for s in layer]

    def global_index(self, s) -> int:
        p, pos = self.index_of[tuple(s)]
        return self.offsets[p] + pos

    def __contains__(self, s) -> bool:
        return tuple(s) in self.index_of

    def grading(self) -> list:
        """Form degree of each simplex in global order."""
        return [p for p, k in enumerate(self.f_vector) for _ in range(k)]

    def same_simplices(self, other: "SimplicialComplex") -> bool:
        return self.simplices_by_dim == other.simplices_by_dim

    def __repr__(self):
        return f"SimplicialComplex(f_vector={self.f_vector})"


def _assemble(graph: Graph, layers: list) -> SimplicialComplex:
    while layers and not layers[-1]:
        layers.pop()
    layers = tuple(tuple(sorted(layer)) for layer in layers)
    index = {s: (p, i) for p, layer in enumerate(layers) for i, s in enumerate(layer)}
    return SimplicialComplex(graph, layers, index)


def build_complex(g: Graph, max_dim: int | None = None) -> SimplicialComplex:
    """All complete subgraphs of ``g`` up to dimension ``max_dim``.

    Each p-simplex is extended only by common neighbors larger than its last
    vertex, so every clique is produced once and already in lexicographic order.
    """
    adj = g.adjacency()
    layer = [(x,) for x in g.vertices]
    # candidates[s] = common neighbors of s above max(s)
    cand = {(x,): {y for y in adj[x] if y > x} for x in g.vertices}
    layers = [layer] if layer else []
    while layer and (max_dim is None or len(layers) <= max_dim):
        nxt = []
        nxt_cand = {}
        for s in layer:
            for y in sorted(cand[s]):
                t = s + (y,)
                nxt.append(t)
                nxt_cand[t] = {z for z in cand[s] if z > y and z in adj[y]}
        if not nxt:
            break
        layers.append(nxt)
        layer, cand = nxt, nxt_cand
    return _assemble(g, layers)


def complex_from_simplices(vertex_count: int, simplices: Iterable) -> SimplicialComplex:
    """Smallest complex containing ``simplices`` (faces are added).

    The attached graph is the 1-skeleton. Used for nerves, which need not be
    clique complexes.
    """
    layers: list = []
    for s in simplices:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            while len(layers) < k:
                layers.append(set())
            layers[k - 1].update(combinations(s, k))
    for x in range(vertex_count):
        if not layers:
            layers.append(set())
        layers[0].add((x,))
    edges = frozenset(layers[1]) if len(layers) > 1 else frozenset()
    return _assemble(Graph(vertex_count, edges), [set(layer) for layer in layers])


def euler_characteristic(c: SimplicialComplex) -> int:
    return sum((-1) ** p * k for p, k in enumerate(c.f_vector))


def faces(s: tuple) -> list:
    """Codimension-one faces, face k omits vertex k."""
    return [s[:k] + s[k + 1:] for k in range(len(s))]


def cofaces(c: SimplicialComplex, s: tuple) -> list:
    """Simplices of dimension dim(s)+1 containing ``s``."""
    s = tuple(s)
    p = len(s) - 1
    if p + 1 > c.dimension:
        return []
    adj = c.graph.adjacency()
    common = set.intersection(*(adj[x] for x in s)) if s else set()
    out = []
    for y in sorted(common):
        t = tuple(sorted(s + (y,)))
        if t in c.index_of:
            out.append(t)
    return out
