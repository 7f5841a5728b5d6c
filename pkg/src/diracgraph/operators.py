"""Signed incidence matrices, the Dirac operator D = d + d^T, the Hodge
Laplacian blocks and the Poisson solve L_p A = j.

All assembly is integer-valued; floats appear only once an eigendecomposition
is requested.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex import SimplicialComplex, complex_from_simplices, faces
from .linalg import eigen_sym

POISSON_TOL = 1e-8


class UnsolvableError(ValueError):
    """Right-hand side has a harmonic component, so L_p A = j has no solution."""

    def __init__(self, harmonic_norm: float):
        super().__init__(f"right-hand side has harmonic component of norm {harmonic_norm:.3e}")
        self.harmonic_norm = harmonic_norm


@dataclass(frozen=True)
class SignedIncidence:
    p: int
    rows: int
    cols: int
    entries: tuple  # (row, col, sign)

    def dense(self) -> np.ndarray:
        m = np.zeros((self.rows, self.cols), dtype=np.int64)
        for r, c, s in self.entries:
            m[r, c] = s
        return m


@dataclass(frozen=True)
class DiracMatrix:
    matrix: np.ndarray
    dim_offsets: tuple

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class LaplacianBlocks:
    blocks: tuple

    def __getitem__(self, p):
        return self.blocks[p]

    def __len__(self):
        return len(self.blocks)

    def full(self) -> np.ndarray:
        n = sum(b.shape[0] for b in self.blocks)
        out = np.zeros((n, n), dtype=np.int64)
        k = 0
        for b in self.blocks:
            m = b.shape[0]
            out[k:k + m, k:k + m] = b
            k += m
        return out


def _incidence_entries(c: SimplicialComplex, p: int) -> list:
    out = []
    for r, s in enumerate(c.simplices_by_dim[p + 1]):
        for k, face in enumerate(faces(s)):
            out.append((r, c.index_of[face][1], 1 if k % 2 == 0 else -1))
    return out


def incidence(c: SimplicialComplex, p: int) -> SignedIncidence:
    """d_p from p-forms to (p+1)-forms: removing vertex k contributes (-1)^k."""
    if not 0 <= p < c.dimension:
        raise ValueError(f"degree {p} outside 0..{c.dimension - 1}")
    return SignedIncidence(p, c.f_vector[p + 1], c.f_vector[p],
                           tuple(_incidence_entries(c, p)))


def d_matrix(c: SimplicialComplex, p: int) -> np.ndarray:
    """Dense d_p, with empty shapes at the ends of the chain (p = -1 or top)."""
    key = ("d", p)
    if key not in c._cache:
        f = c.f_vector
        rows = f[p + 1] if 0 <= p + 1 < len(f) else 0
        cols = f[p] if 0 <= p < len(f) else 0
        m = np.zeros((rows, cols), dtype=np.int64)
        if rows and cols:
            for r, col, s in _incidence_entries(c, p):
                m[r, col] = s
        c._cache[key] = m
    return c._cache[key]


def dirac(c: SimplicialComplex) -> DiracMatrix:
    if "dirac" not in c._cache:
        off = c.offsets
        m = np.zeros((c.size, c.size), dtype=np.int64)
        for p in range(c.dimension):
            d = d_matrix(c, p)
            m[off[p + 1]:off[p + 2], off[p]:off[p + 1]] = d
            m[off[p]:off[p + 1], off[p + 1]:off[p + 2]] = d.T
        c._cache["dirac"] = DiracMatrix(m, off)
    return c._cache["dirac"]


def up_laplacian(c: SimplicialComplex, p: int) -> np.ndarray:
    d = d_matrix(c, p)
    return d.T @ d


def down_laplacian(c: SimplicialComplex, p: int) -> np.ndarray:
    d = d_matrix(c, p - 1)
    return d @ d.T


def laplacian(c: SimplicialComplex) -> LaplacianBlocks:
    """Blocks L_p = d_p^T d_p + d_{p-1} d_{p-1}^T."""
    if "laplacian" not in c._cache:
        blocks = tuple(up_laplacian(c, p) + down_laplacian(c, p) for p in range(c.dimension + 1))
        c._cache["laplacian"] = LaplacianBlocks(blocks)
    return c._cache["laplacian"]


def laplacian_block(c: SimplicialComplex, p: int) -> np.ndarray:
    return laplacian(c)[p]


@dataclass(frozen=True)
class AugmentedPair:
    union_simplices: tuple
    d_g: np.ndarray
    d_h: np.ndarray
    present_g: np.ndarray
    present_h: np.ndarray

    @property
    def size(self) -> int:
        return len(self.union_simplices)


def _padded_dirac(union: list, index: dict, c: SimplicialComplex) -> np.ndarray:
    m = np.zeros((len(union), len(union)), dtype=np.int64)
    for s in c.simplices():
        if len(s) < 2:
            continue
        i = index[s]
        for k, face in enumerate(faces(s)):
            j = index[face]
            m[i, j] = m[j, i] = 1 if k % 2 == 0 else -1
    return m


def augment(cg: SimplicialComplex, ch: SimplicialComplex) -> AugmentedPair:
    """Dirac matrices of both complexes over the union of their simplices.

    Vertex ids are shared labels, so a simplex present in both graphs gets the
    same orientation in both padded matrices. The vertex sets may differ (one
    graph can carry extra vertices).
    """
    union = sorted(set(cg.index_of) | set(ch.index_of), key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(union)}
    present_g = np.array([s in cg.index_of for s in union], dtype=bool)
    present_h = np.array([s in ch.index_of for s in union], dtype=bool)
    return AugmentedPair(tuple(union), _padded_dirac(union, index, cg),
                         _padded_dirac(union, index, ch), present_g, present_h)


def union_complex(cg: SimplicialComplex, ch: SimplicialComplex) -> SimplicialComplex:
    n = max(cg.graph.vertex_count, ch.graph.vertex_count)
    return complex_from_simplices(n, list(cg.index_of) + list(ch.index_of))


def maximal_simplex_degree(c: SimplicialComplex) -> int:
    """Largest number of codimension-one faces plus cofaces over all simplices."""
    if c.size == 0:
        return 0
    return int(np.max(np.count_nonzero(dirac(c).matrix, axis=0)))


def _block_spectrum(c: SimplicialComplex, p: int):
    key = ("Lspec", p)
    if key not in c._cache:
        c._cache[key] = eigen_sym(laplacian(c)[p])
    return c._cache[key]


def solve_poisson(c: SimplicialComplex, p: int, j) -> np.ndarray:
    """Minimal-norm A with L_p A = j (A orthogonal to the harmonic p-forms).

    Raises UnsolvableError when the harmonic projection of ``j`` exceeds
    1e-8 * max(1, |j|).
    """
    j = np.asarray(j)
    if not 0 <= p <= c.dimension or j.shape != (c.f_vector[p],):
        raise ValueError(f"expected a cochain of length {c.f_vector[p] if 0 <= p <= c.dimension else 0}")
    spec = _block_spectrum(c, p)
    u, lam = spec.eigenvectors, spec.eigenvalues
    coeff = u.T @ j
    zero = np.abs(lam) <= spec.zero_tolerance
    harmonic = float(np.linalg.norm(coeff[zero]))
    if harmonic > POISSON_TOL * max(1.0, float(np.linalg.norm(j))):
        raise UnsolvableError(harmonic)
    inv = np.zeros_like(lam)
    inv[~zero] = 1.0 / lam[~zero]
    return u @ (inv * coeff)


def maxwell_field(c: SimplicialComplex, j) -> tuple:
    """Coulomb-gauge potential A on edges with L_1 A = j, and the field F = dA on triangles."""
    a = solve_poisson(c, 1, j)
    return a, d_matrix(c, 1) @ a
