"""Contractibility in the sense of Ivashchenko, greedy contraction, and nerves
of covers by subgraphs."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import combinations

from .complex import SimplicialComplex, build_complex, complex_from_simplices
from .graph import Graph, GraphError, induced_subgraph, remove_vertex, unit_ball, unit_sphere
from .hodge import betti, trim_betti

MAX_CONTRACT_VERTICES = 12


class CoverError(ValueError):
    pass


class _Memo:
    """Dict guarded by a lock; values are computed outside it, and since they are
    deterministic a racing duplicate store writes the same value."""

    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict = {}

    def get(self, key):
        with self._lock:
            return self._data.get(key, _MISSING)

    def put(self, key, value):
        with self._lock:
            self._data.setdefault(key, value)
            return self._data[key]

    def clear(self):
        with self._lock:
            self._data.clear()

    def __len__(self):
        with self._lock:
            return len(self._data)


_MISSING = object()
_memo = _Memo()


def _key(g: Graph) -> tuple:
    return g.vertex_count, g.edges


def is_contractible(g: Graph, cap: int = MAX_CONTRACT_VERTICES) -> bool | None:
    """True if ``g`` reduces to a point by deleting vertices with contractible unit spheres.

    Formally: the one-point graph is contractible, and G is contractible when
    some vertex x has S(x) contractible and G - x contractible. Empty and
    disconnected graphs are not. Returns None (undecided) when a subproblem
    has more than ``cap`` vertices.
    """
    n = g.vertex_count
    if n == 0:
        return False
    if n == 1:
        return True
    if not g.is_connected():
        return False
    if n > cap:
        return None
    key = _key(induced_subgraph(g, g.vertices))
    hit = _memo.get(key)
    if hit is not _MISSING:
        return hit
    result: bool | None = False
    for x in g.vertices:
        s = is_contractible(unit_sphere(g, x), cap)
        if s is None:
            result = None
            continue
        if not s:
            continue
        rest = is_contractible(remove_vertex(g, x), cap)
        if rest:
            result = True
            break
        if rest is None:
            result = None
    return _memo.put(key, result)


def clear_memo():
    _memo.clear()


def contract(g: Graph, cap: int = MAX_CONTRACT_VERTICES) -> tuple:
    """Greedily delete the lowest vertex whose unit sphere is contractible.

    Returns the reduced graph (labels point back into ``g``) and the removed
    vertices of ``g`` in removal order.
    """
    cur = induced_subgraph(g, g.vertices)
    removed = []
    while cur.vertex_count > 1:
        for x in cur.vertices:
            if is_contractible(unit_sphere(cur, x), cap):
                removed.append(cur.label(x))
                cur = remove_vertex(cur, x)
                break
        else:
            break
    return cur, removed


# --- covers and nerves --------------------------------------------------------

@dataclass(frozen=True)
class Cover:
    vertex_count: int
    patches: tuple  # frozensets of host vertex ids

    def __post_init__(self):
        if not self.patches:
            raise CoverError("a cover needs at least one patch")
        seen = set()
        for i, p in enumerate(self.patches):
            if not p:
                raise CoverError(f"patch {i} is empty")
            bad = [x for x in p if not 0 <= x < self.vertex_count]
            if bad:
                raise CoverError(f"patch {i} has vertex {bad[0]} outside 0..{self.vertex_count - 1}")
            seen |= p
        missing = sorted(set(range(self.vertex_count)) - seen)
        if missing:
            raise CoverError(f"patches do not cover vertices {missing}")

    @classmethod
    def from_lists(cls, vertex_count: int, patches) -> "Cover":
        return cls(vertex_count, tuple(frozenset(p) for p in patches))

    def intersection(self, idx) -> frozenset:
        out = self.patches[idx[0]]
        for i in idx[1:]:
            out = out & self.patches[i]
        return out


def parse_cover(text: str, vertex_count: int) -> Cover:
    """One patch per line, vertex ids separated by spaces; '#' starts a comment."""
    patches = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            patches.append([int(t) for t in line.split()])
        except ValueError:
            raise CoverError(f"line {lineno}: non-integer vertex id in {line!r}") from None
    return Cover.from_lists(vertex_count, patches)


def read_cover(path, vertex_count: int) -> Cover:
    with open(path, encoding="utf-8") as fh:
        return parse_cover(fh.read(), vertex_count)


def unit_ball_cover(g: Graph) -> Cover:
    return Cover.from_lists(g.vertex_count, [unit_ball(g, x) for x in g.vertices])


@dataclass(frozen=True)
class NerveValidation:
    noncontractible_patches: tuple
    noncontractible_intersections: tuple  # patch index tuples
    undecided: tuple
    uncovered_simplices: tuple            # simplices of G inside no patch
    checked_order: int

    @property
    def valid(self) -> bool:
        return not (self.noncontractible_patches or self.noncontractible_intersections
                    or self.undecided or self.uncovered_simplices)


@dataclass(frozen=True)
class Nerve:
    graph: Graph
    witnesses: dict = field(repr=False)  # nerve edge -> shared host vertices
    complex: SimplicialComplex = field(repr=False)  # patch sets with a common vertex
    validation: NerveValidation = field(repr=False)

    @property
    def hollow_cliques(self) -> tuple:
        """Cliques of the nerve graph with empty common intersection."""
        cliques = build_complex(self.graph)
        return tuple(s for s in cliques.simplices() if s not in self.complex)


def nerve(g: Graph, cover: Cover, order: int = 2) -> Nerve:
    """Nerve of ``cover``: one vertex per patch, an edge when two patches meet.

    Validation checks that every patch and every nonempty intersection of up
    to ``order`` patches induces a contractible subgraph, and that every
    simplex of G lies inside some patch.
    """
    if cover.vertex_count != g.vertex_count:
        raise CoverError(f"cover is for {cover.vertex_count} vertices, graph has {g.vertex_count}")
    k = len(cover.patches)
    witnesses = {}
    for a, b in combinations(range(k), 2):
        common = cover.patches[a] & cover.patches[b]
        if common:
            witnesses[(a, b)] = tuple(sorted(common))
    ngraph = Graph(k, frozenset(witnesses))
    # simplices of the Cech nerve: patch sets sharing a vertex
    tops = [tuple(i for i in range(k) if x in cover.patches[i]) for x in g.vertices]
    ncomplex = complex_from_simplices(k, tops)

    bad_patches, bad_inter, undecided = [], [], []
    for i, p in enumerate(cover.patches):
        r = is_contractible(induced_subgraph(g, p))
        if r is None:
            undecided.append((i,))
        elif not r:
            bad_patches.append(i)
    for dim in range(1, min(order, ncomplex.dimension + 1)):
        for s in ncomplex.simplices_by_dim[dim]:
            r = is_contractible(induced_subgraph(g, cover.intersection(s)))
            if r is None:
                undecided.append(s)
            elif not r:
                bad_inter.append(s)
    uncovered = tuple(s for s in build_complex(g).simplices()
                      if not any(set(s) <= p for p in cover.patches))
    validation = NerveValidation(tuple(bad_patches), tuple(bad_inter), tuple(undecided),
                                 uncovered, order)
    return Nerve(ngraph, witnesses, ncomplex, validation)


@dataclass(frozen=True)
class CechVerdict:
    status: str  # "equal", "different" or "not a Cech cover"
    graph_betti: tuple
    nerve_betti: tuple | None
    nerve_clique_betti: tuple | None

    @property
    def equal(self) -> bool:
        return self.status == "equal"


def cech_betti_check(g: Graph, cover: Cover, order: int = 2) -> CechVerdict:
    """Compare Betti numbers of G with those of the nerve of a valid cover."""
    n = nerve(g, cover, order)
    gb = betti(build_complex(g))
    if not n.validation.valid:
        return CechVerdict("not a Cech cover", gb, None, None)
    nb = betti(n.complex)
    cb = betti(build_complex(n.graph))
    return CechVerdict("equal" if trim_betti(nb) == trim_betti(gb) else "different", gb, nb, cb)


__all__ = [
    "CoverError", "GraphError", "is_contractible", "contract", "clear_memo", "Cover",
    "parse_cover", "read_cover", "unit_ball_cover", "Nerve", "NerveValidation", "nerve",
    "CechVerdict", "cech_betti_check",
]
