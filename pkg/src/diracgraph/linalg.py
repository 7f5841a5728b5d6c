"""Dense symmetric eigensolver and exact integer rank.

``eigen_sym`` reduces to tridiagonal form with Householder reflections and
then runs the implicit-shift QL iteration (the EISPACK tql2 scheme), keeping
the accumulated orthogonal transform as eigenvectors. No randomness is
involved, so identical input gives identical output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SYMMETRY_TOL = 1e-12
MAX_QL_ITERATIONS = 60


class NotSymmetricError(ValueError):
    pass


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with optional eigenvectors (columns) and grading.

    For Laplacian spectra ``grading[i]`` is the form degree of eigenvalue i.
    For Dirac spectra it is the bosonic weight <u, P u> in [-1, 1] of the
    eigenvector, P being +1 on even and -1 on odd forms.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None
    grading: np.ndarray | None = None
    zero_tolerance: float = 0.0

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def zero_mask(self) -> np.ndarray:
        return np.abs(self.eigenvalues) <= self.zero_tolerance

    def zero_count(self) -> int:
        return int(self.zero_mask.sum())

    def nonzero(self) -> np.ndarray:
        return self.eigenvalues[~self.zero_mask]

    def to_dict(self) -> dict:
        grading = None if self.grading is None else [
            int(g) if float(g).is_integer() else float(g) for g in self.grading]
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "grading": grading,
            "zero_tolerance": float(self.zero_tolerance),
        }


def zero_threshold(eigenvalues) -> float:
    """1e-9 * max(1, largest |eigenvalue|)."""
    top = float(np.max(np.abs(eigenvalues))) if len(eigenvalues) else 0.0
    return 1e-9 * max(1.0, top)


def householder_tridiagonalize(a: np.ndarray):
    """Return (diag, offdiag, Q) with a = Q T Q^T, T tridiagonal."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    q = np.eye(n)
    for k in range(n - 2):
        x = a[k + 1:, k]
        norm = math.sqrt(float(x @ x))
        if norm == 0.0:
            continue
        alpha = -norm if x[0] >= 0 else norm
        v = x.copy()
        v[0] -= alpha
        vnorm2 = float(v @ v)
        if vnorm2 == 0.0:
            continue
        v *= math.sqrt(2.0 / vnorm2)
        # two-sided update of the trailing block: H A H with H = I - v v^T
        sub = a[k + 1:, k + 1:]
        w = sub @ v
        w -= 0.5 * (v @ w) * v
        sub -= np.outer(v, w) + np.outer(w, v)
        a[k + 1:, k] = 0.0
        a[k, k + 1:] = 0.0
        a[k + 1, k] = a[k, k + 1] = alpha
        q[:, k + 1:] -= np.outer(q[:, k + 1:] @ v, v)
    d = np.diag(a).copy()
    e = np.diag(a, -1).copy() if n > 1 else np.zeros(0)
    return d, e, q


def tridiagonal_ql(d: np.ndarray, e: np.ndarray, z: np.ndarray):
    """Implicit-shift QL on the tridiagonal (d, e); rotations applied to z's columns.

    ``e[i]`` couples d[i] and d[i+1]. Returns unsorted (eigenvalues, vectors).
    """
    n = len(d)
    d = d.astype(float).copy()
    z = z.astype(float).copy()
    # shift so e[i] couples d[i], d[i+1] and e[n-1] = 0 terminates the scan
    e = np.concatenate([e.astype(float), [0.0]]) if n else np.zeros(0)
    eps = np.finfo(float).eps
    f = 0.0
    tst1 = 0.0
    for l in range(n):
        tst1 = max(tst1, abs(d[l]) + abs(e[l]))
        m = l
        while m < n - 1 and abs(e[m]) > eps * tst1:
            m += 1
        if m > l:
            it = 0
            while True:
                it += 1
                if it > MAX_QL_ITERATIONS:
                    raise ConvergenceError(f"QL iteration did not converge at index {l}")
                g = d[l]
                p = (d[l + 1] - g) / (2.0 * e[l])
                r = math.hypot(p, 1.0)
                if p < 0:
                    r = -r
                d[l] = e[l] / (p + r)
                d[l + 1] = e[l] * (p + r)
                dl1 = d[l + 1]
                h = g - d[l]
                d[l + 2:] -= h
                f += h
                p = d[m]
                c = c2 = c3 = 1.0
                el1 = e[l + 1]
                s = s2 = 0.0
                for i in range(m - 1, l - 1, -1):
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * e[i]
                    h = c * p
                    r = math.hypot(p, e[i])
                    e[i + 1] = s * r
                    s = e[i] / r
                    c = p / r
                    p = c * d[i] - s * g
                    d[i + 1] = h + s * (c * g + s * d[i])
                    zi1 = z[:, i + 1].copy()
                    z[:, i + 1] = s * z[:, i] + c * zi1
                    z[:, i] = c * z[:, i] - s * zi1
                p = -s * s2 * c3 * el1 * e[l] / dl1
                e[l] = s * p
                d[l] = c * p
                if abs(e[l]) <= eps * tst1:
                    break
        d[l] += f
        e[l] = 0.0
    return d, z


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    # largest-magnitude entry of every column made positive
    if vectors.size == 0:
        return vectors
    idx = np.argmax(np.abs(vectors) > np.abs(vectors).max(axis=0) * (1 - 1e-8), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def eigen_sym(m, vectors: bool = True) -> Spectrum:
    """Full eigendecomposition of a real symmetric matrix.

    Raises NotSymmetricError if ``m`` deviates from its transpose by more
    than 1e-12 in any entry.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSymmetricError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n and np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
        raise NotSymmetricError("matrix is not symmetric")
    if n == 0:
        return Spectrum(np.zeros(0), np.zeros((0, 0)) if vectors else None, None, 0.0)
    m = 0.5 * (m + m.T)
    d, e, q = householder_tridiagonalize(m)
    w, z = tridiagonal_ql(d, e, q)
    order = np.argsort(w, kind="stable")
    w = w[order]
    z = _fix_signs(z[:, order])
    return Spectrum(w, z if vectors else None, None, zero_threshold(w))


def eigvals_sym(m) -> np.ndarray:
    return eigen_sym(m, vectors=False).eigenvalues


def spectral_function(spec: Spectrum, values: np.ndarray) -> np.ndarray:
    """U diag(values) U^T for a spectrum with eigenvectors."""
    u = spec.eigenvectors
    return (u * values) @ u.T


def exact_rank(matrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    Pivots are chosen by largest magnitude in the column; all intermediate
    values stay integers because every division is exact.
    """
    rows = [[int(x) for x in row] for row in np.asarray(matrix, dtype=object).tolist()] \
        if not isinstance(matrix, list) else [[int(x) for x in row] for row in matrix]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == len(rows):
            break
        piv = max(range(rank, len(rows)), key=lambda r: abs(rows[r][col]))
        if rows[piv][col] == 0:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        top = rows[rank]
        a = top[col]
        for r in range(rank + 1, len(rows)):
            row = rows[r]
            b = row[col]
            if b == 0:
                rows[r] = [(a * x) // prev for x in row]
            else:
                rows[r] = [(a * x - b * y) // prev for x, y in zip(row, top)]
            rows[r][col] = 0
        prev = a
        rank += 1
    return rank
