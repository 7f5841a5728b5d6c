"""Betti numbers by exact rank, harmonic forms, and the Hodge decomposition."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex import SimplicialComplex
from .linalg import eigen_sym, exact_rank
from .operators import d_matrix, down_laplacian, laplacian, up_laplacian
from .spectral import laplacian_spectra

HARMONIC_TOL = 1e-8


def incidence_rank(c: SimplicialComplex, p: int) -> int:
    """Exact rank of d_p; zero outside 0..top-1."""
    key = ("rank", p)
    if key not in c._cache:
        d = d_matrix(c, p)
        c._cache[key] = exact_rank(d.tolist()) if d.size else 0
    return c._cache[key]


def betti(c: SimplicialComplex) -> tuple:
    """b_p = v_p - rank d_p - rank d_{p-1}, ranks taken over the rationals."""
    f = c.f_vector
    return tuple(f[p] - incidence_rank(c, p) - incidence_rank(c, p - 1) for p in range(len(f)))


def trim_betti(b) -> tuple:
    """Drop trailing zeros so complexes of different dimension compare equal."""
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    return tuple(b)


def numeric_betti(c: SimplicialComplex) -> tuple:
    """Kernel dimensions of the L_p blocks under the eigenvalue zero threshold."""
    return tuple(s.zero_count() for s in laplacian_spectra(c))


def harmonic_basis(c: SimplicialComplex, p: int) -> np.ndarray:
    """Orthonormal basis of ker L_p as columns (shape v_p x b_p)."""
    if not 0 <= p <= c.dimension:
        raise ValueError(f"degree {p} outside 0..{c.dimension}")
    spec = laplacian_spectra(c)[p]
    return spec.eigenvectors[:, spec.zero_mask]


def _range_projector(m: np.ndarray) -> np.ndarray:
    """Orthogonal projector onto the range of the PSD matrix ``m``."""
    if m.shape[0] == 0:
        return np.zeros((0, 0))
    spec = eigen_sym(m)
    u = spec.eigenvectors[:, ~spec.zero_mask]
    return u @ u.T


def _projectors(c: SimplicialComplex, p: int):
    key = ("hodge_proj", p)
    if key not in c._cache:
        c._cache[key] = (_range_projector(down_laplacian(c, p)), _range_projector(up_laplacian(c, p)))
    return c._cache[key]


@dataclass(frozen=True)
class HodgeSplit:
    exact: np.ndarray
    coexact: np.ndarray
    harmonic: np.ndarray

    def total(self) -> np.ndarray:
        return self.exact + self.coexact + self.harmonic


def hodge_decompose(c: SimplicialComplex, p: int, g) -> HodgeSplit:
    """Split a p-cochain into parts in im d_{p-1}, im d_p^T and ker L_p.

    The exact and coexact parts are orthogonal projections onto the ranges of
    the down and up Laplacians; the harmonic part is the projection onto
    ``harmonic_basis``.
    """
    if not 0 <= p <= c.dimension:
        raise ValueError(f"degree {p} outside 0..{c.dimension}")
    g = np.asarray(g)
    if g.shape != (c.f_vector[p],):
        raise ValueError(f"degree mismatch: expected length {c.f_vector[p]}, got {g.shape}")
    down, up = _projectors(c, p)
    h = harmonic_basis(c, p)
    return HodgeSplit(down @ g, up @ g, h @ (h.T @ g))


def is_harmonic(c: SimplicialComplex, p: int, f, tol: float = HARMONIC_TOL) -> bool:
    """df = 0 and d^T f = 0 within ``tol``."""
    f = np.asarray(f)
    df = d_matrix(c, p) @ f
    dsf = d_matrix(c, p - 1).T @ f
    return float(np.linalg.norm(df)) <= tol and float(np.linalg.norm(dsf)) <= tol


def laplacian_kernel_agrees(c: SimplicialComplex) -> bool:
    return betti(c) == numeric_betti(c) and len(laplacian(c)) == len(c.f_vector)
