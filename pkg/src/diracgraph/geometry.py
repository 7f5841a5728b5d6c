"""Degrees, the handshake trace identity, path counting, curvature and
distances between graphs.

Everything that is integral is computed in integer or Fraction arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .complex import SimplicialComplex, build_complex, cofaces, euler_characteristic, faces
from .graph import Graph, unit_sphere
from .linalg import eigvals_sym
from .operators import augment, d_matrix, dirac, laplacian, maximal_simplex_degree
from .spectral import IdentityViolation, supertrace_l_plus_one

SPECTRUM_TOL = 1e-8
LIDSKII_SLACK = 1e-9


# --- degrees and traces -------------------------------------------------------

def p_degree(c: SimplicialComplex, x) -> int:
    """Number of (p+1)-simplices containing the p-simplex ``x``.

    Read off the Laplacian diagonal, L_p(x, x) - (p + 1) for p > 0 and
    L_0(x, x) for vertices, and checked against a direct coface count.
    """
    x = tuple(x)
    if x not in c:
        raise ValueError(f"{x} is not a simplex of the complex")
    p, i = c.index_of[x]
    diag = int(laplacian(c)[p][i, i])
    from_diag = diag if p == 0 else diag - (p + 1)
    direct = len(cofaces(c, x))
    if from_diag != direct:
        raise IdentityViolation(f"p-degree of {x}: diagonal gives {from_diag}, cofaces {direct}")
    return direct


@dataclass(frozen=True)
class HandshakeRow:
    p: int
    trace: int
    literal: int    # (p+2) v_{p+1}
    corrected: int  # literal plus the (p+1) v_p coming from the d d^T part

    @property
    def literal_holds(self) -> bool:
        return self.trace == self.literal

    @property
    def corrected_holds(self) -> bool:
        return self.trace == self.corrected


@dataclass(frozen=True)
class HandshakeReport:
    rows: tuple
    str_l_plus_one: int
    euler_characteristic: int

    @property
    def literal_holds(self) -> bool:
        """tr(L_p) = (p+2) v_{p+1} for every p below the top dimension."""
        return all(r.literal_holds for r in self.rows[:-1])

    @property
    def holds(self) -> bool:
        return all(r.corrected_holds for r in self.rows) and self.str_l_plus_one == self.euler_characteristic


def handshake_check(c: SimplicialComplex) -> HandshakeReport:
    """Traces of the Laplacian blocks against the simplex counts.

    tr(d_p^T d_p) = (p+2) v_{p+1} always, since every (p+1)-simplex has p+2
    faces. The down part adds (p+1) v_p for p > 0, so tr(L_p) equals
    (p+2) v_{p+1} alone only for p = 0 (or when v_p = 0). Both forms are
    reported, together with str(L + 1) = chi.
    """
    f = list(c.f_vector) + [0]
    rows = []
    for p, block in enumerate(laplacian(c).blocks):
        literal = (p + 2) * f[p + 1]
        corrected = literal + (p + 1) * f[p] if p > 0 else literal
        rows.append(HandshakeRow(p, int(np.trace(block)), literal, corrected))
    return HandshakeReport(tuple(rows), supertrace_l_plus_one(c), euler_characteristic(c))


# --- paths --------------------------------------------------------------------

def _hasse(c: SimplicialComplex) -> dict:
    if "hasse" not in c._cache:
        nbr = {s: [] for s in c.simplices()}
        for s in c.simplices():
            if len(s) > 1:
                for t in faces(s):
                    nbr[s].append(t)
                    nbr[t].append(s)
        c._cache["hasse"] = nbr
    return c._cache["hasse"]


def count_paths(c: SimplicialComplex, x, y, k: int) -> int:
    """Unsigned number of length-k walks from ``x`` to ``y`` in the face poset.

    Each step goes to a codimension-one face or coface. The first step fixes a
    corridor of two adjacent dimensions and the walk stays inside it.
    """
    x, y = tuple(x), tuple(y)
    if x not in c or y not in c:
        raise ValueError("both endpoints must be simplices of the complex")
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return int(x == y)
    nbr = _hasse(c)
    # state: (simplex, lower dimension of the corridor)
    states: dict = {}
    for t in nbr[x]:
        key = (t, min(len(t), len(x)) - 1)
        states[key] = states.get(key, 0) + 1
    for _ in range(k - 1):
        nxt: dict = {}
        for (s, lo), n in states.items():
            for t in nbr[s]:
                if lo <= len(t) - 1 <= lo + 1:
                    nxt[(t, lo)] = nxt.get((t, lo), 0) + n
        states = nxt
    return sum(n for (s, _), n in states.items() if s == y)


def dirac_power(c: SimplicialComplex, k: int) -> np.ndarray:
    """D^k in exact integer arithmetic (object dtype)."""
    key = ("Dpow", k)
    if key not in c._cache:
        d = dirac(c).matrix.astype(object)
        c._cache[key] = np.linalg.matrix_power(d, k) if k else np.eye(c.size, dtype=int).astype(object)
    return c._cache[key]


def dirac_power_entry(c: SimplicialComplex, x, y, k: int) -> int:
    if tuple(x) not in c or tuple(y) not in c:
        raise ValueError("both endpoints must be simplices of the complex")
    return int(dirac_power(c, k)[c.global_index(x), c.global_index(y)])


def closed_path_parity(c: SimplicialComplex, k: int, check: bool = True) -> tuple:
    """(even, odd) sums of the D^{2k} diagonal over even and odd dimensional simplices."""
    if k < 1:
        raise ValueError("k must be at least 1")
    diag = np.diagonal(dirac_power(c, 2 * k))
    even = sum(int(v) for v, p in zip(diag, c.grading()) if p % 2 == 0)
    odd = sum(int(v) for v, p in zip(diag, c.grading()) if p % 2 == 1)
    if check and even != odd:
        raise IdentityViolation(f"closed walks of length {2 * k}: even {even} != odd {odd}")
    return even, odd


def signed_unsigned_mismatches(c: SimplicialComplex, k: int) -> list:
    """(simplex, D^k diagonal, unsigned closed walk count) wherever the two differ."""
    out = []
    for s in c.simplices():
        signed = dirac_power_entry(c, s, s, k)
        unsigned = count_paths(c, s, s, k)
        if signed != unsigned:
            out.append((s, signed, unsigned))
    return out


# --- curvature ----------------------------------------------------------------

@dataclass(frozen=True)
class CurvatureReport:
    curvatures: tuple            # Fraction per vertex
    total: Fraction
    sphere_counts: tuple         # (V_0, V_1, ...) of each unit sphere
    operator_curvatures: tuple   # the same values from traces of sphere operators
    euler_characteristic: int

    @property
    def holds(self) -> bool:
        return self.total == self.euler_characteristic and self.curvatures == self.operator_curvatures


def _operator_curvature(sphere: SimplicialComplex) -> Fraction:
    # tr(d_q^T d_q) = (q+2) V_{q+1}, so the trace series reproduces the clique series
    v0 = sphere.f_vector[0] if sphere.f_vector else 0
    k = Fraction(1) - Fraction(v0, 2)
    for q in range(sphere.dimension):
        d = d_matrix(sphere, q)
        tr = int(np.sum(d * d))
        k += Fraction((-1) ** q * tr, (q + 2) * (q + 3))
    return k


def curvature(g: Graph) -> CurvatureReport:
    """K(x) = 1 + sum_{k>=1} (-1)^k V_{k-1}(x) / (k+1), V_j counting j-simplices of S(x)."""
    ks, counts, ops = [], [], []
    for x in g.vertices:
        sphere = build_complex(unit_sphere(g, x))
        v = sphere.f_vector
        k = Fraction(1) + sum((Fraction((-1) ** (j + 1) * n, j + 2) for j, n in enumerate(v)), Fraction(0))
        ks.append(k)
        counts.append(v)
        ops.append(_operator_curvature(sphere))
    total = sum(ks, Fraction(0))
    return CurvatureReport(tuple(ks), total, tuple(counts), tuple(ops),
                           euler_characteristic(build_complex(g)))


# --- distances ----------------------------------------------------------------

def simplex_distance(cg: SimplicialComplex, ch: SimplicialComplex) -> Fraction:
    """|simplices in exactly one complex| / |simplices in either|."""
    a, b = set(cg.index_of), set(ch.index_of)
    union = a | b
    if not union:
        return Fraction(0)
    return Fraction(len(a ^ b), len(union))


def lidskii_check(a, b) -> tuple:
    """(sum |alpha_j - beta_j| over sorted eigenvalues, sum |A - B|_ij, lhs <= rhs)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    lhs = float(np.sum(np.abs(eigvals_sym(a) - eigvals_sym(b))))
    rhs = float(np.sum(np.abs(a - b)))
    return lhs, rhs, lhs <= rhs + LIDSKII_SLACK


@dataclass(frozen=True)
class DistanceReport:
    simplex_distance: Fraction
    spectral_distance: float
    lidskii_bound: float
    max_degree_used: int
    union_size: int

    @property
    def holds(self) -> bool:
        return self.spectral_distance <= self.lidskii_bound + LIDSKII_SLACK

    def to_dict(self) -> dict:
        return {
            "simplex_distance": str(self.simplex_distance),
            "simplex_distance_value": float(self.simplex_distance),
            "spectral_distance": self.spectral_distance,
            "lidskii_bound": self.lidskii_bound,
            "max_degree_used": self.max_degree_used,
            "union_size": self.union_size,
            "bound_holds": self.holds,
        }


def spectral_distance(cg: SimplicialComplex, ch: SimplicialComplex, check: bool = True) -> DistanceReport:
    """(1/v) sum |lambda_j - mu_j| over the sorted spectra of the augmented Dirac matrices.

    v is the size of the union of the simplex sets; the bound is
    2 deg d(G, H) with deg the larger maximal simplex degree of the two.
    """
    pair = augment(cg, ch)
    d = simplex_distance(cg, ch)
    deg = max(maximal_simplex_degree(cg), maximal_simplex_degree(ch))
    if pair.size == 0:
        return DistanceReport(d, 0.0, 0.0, deg, 0)
    lam = eigvals_sym(pair.d_g)
    mu = eigvals_sym(pair.d_h)
    dist = float(np.sum(np.abs(lam - mu))) / pair.size
    report = DistanceReport(d, dist, float(2 * deg * d), deg, pair.size)
    if check and not report.holds:
        raise IdentityViolation(f"spectral distance {dist} exceeds bound {report.lidskii_bound}")
    return report


# --- isospectrality -----------------------------------------------------------

LEVELS = ("adjacency", "L0", "all_forms", "dirac")


@dataclass(frozen=True)
class IsospectralVerdict:
    level: str
    isospectral: bool
    max_deviation: float
    differing: tuple  # labels of the spectra that differ (e.g. "L2")


def _compare(a: np.ndarray, b: np.ndarray) -> float:
    if len(a) != len(b):
        return float("inf")
    return float(np.max(np.abs(np.sort(a) - np.sort(b)))) if len(a) else 0.0


def _adjacency_matrix(g: Graph) -> np.ndarray:
    m = np.zeros((g.vertex_count, g.vertex_count))
    for i, j in g.edges:
        m[i, j] = m[j, i] = 1.0
    return m


def compare_block_spectra(blocks_g, blocks_h, tol: float = SPECTRUM_TOL) -> IsospectralVerdict:
    """Form-by-form comparison of two families of Laplacian blocks."""
    n = max(len(blocks_g), len(blocks_h))
    empty = np.zeros((0, 0))
    worst, differing = 0.0, []
    for p in range(n):
        a = blocks_g[p] if p < len(blocks_g) else empty
        b = blocks_h[p] if p < len(blocks_h) else empty
        dev = _compare(eigvals_sym(a), eigvals_sym(b))
        worst = max(worst, dev)
        if dev > tol:
            differing.append(f"L{p}")
    return IsospectralVerdict("all_forms", not differing, worst, tuple(differing))


def isospectral_check(cg: SimplicialComplex, ch: SimplicialComplex, level: str,
                      tol: float = SPECTRUM_TOL) -> IsospectralVerdict:
    if level == "all_forms":
        return compare_block_spectra(laplacian(cg).blocks, laplacian(ch).blocks, tol)
    if level == "adjacency":
        a, b = _adjacency_matrix(cg.graph), _adjacency_matrix(ch.graph)
    elif level == "L0":
        a, b = laplacian(cg)[0], laplacian(ch)[0]
    elif level == "dirac":
        a, b = dirac(cg).matrix, dirac(ch).matrix
    else:
        raise ValueError(f"unknown level {level!r}; choose from {', '.join(LEVELS)}")
    dev = _compare(eigvals_sym(a), eigvals_sym(b))
    return IsospectralVerdict(level, dev <= tol, dev, () if dev <= tol else (level,))


def is_triangle_free(c: SimplicialComplex) -> bool:
    return c.dimension < 2


def lifting_holds(cg: SimplicialComplex, ch: SimplicialComplex) -> bool | None:
    """For triangle-free connected graphs with equal (v0, v1): L0-isospectral implies
    Dirac-isospectral. None when the hypotheses do not apply."""
    if not (is_triangle_free(cg) and is_triangle_free(ch)):
        return None
    if not (cg.graph.is_connected() and ch.graph.is_connected()):
        return None
    if cg.f_vector != ch.f_vector:
        return None
    if not isospectral_check(cg, ch, "L0").isospectral:
        return None
    return isospectral_check(cg, ch, "dirac").isospectral
