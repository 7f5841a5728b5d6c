"""Dirac and Laplacian spectra, supertraces, Dirac complexity and the
multiplicity bookkeeping behind the McKean-Singer identity."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .complex import SimplicialComplex, euler_characteristic
from .linalg import Spectrum, eigen_sym, zero_threshold
from .operators import dirac, laplacian, maximal_simplex_degree

CLUSTER_RTOL = 1e-7
SYMMETRY_TOL = 1e-9


class IdentityViolation(AssertionError):
    """A theorem-level identity failed numerically or exactly."""


def parity_signs(c: SimplicialComplex) -> np.ndarray:
    return np.array([1 - 2 * (p % 2) for p in c.grading()], dtype=float)


def dirac_spectrum(c: SimplicialComplex, check: bool = True) -> Spectrum:
    """Spectrum of D with eigenvectors; grading is each vector's bosonic weight.

    With ``check`` the eigenvalue multiset is verified to be symmetric under
    negation and bounded by sqrt(2 * maximal simplex degree).
    """
    if "dirac_spectrum" not in c._cache:
        spec = eigen_sym(dirac(c).matrix)
        u = spec.eigenvectors
        weights = (parity_signs(c)[:, None] * u * u).sum(axis=0) if u.size else np.zeros(0)
        c._cache["dirac_spectrum"] = Spectrum(spec.eigenvalues, u, weights, spec.zero_tolerance)
    spec = c._cache["dirac_spectrum"]
    if check and len(spec):
        lam = spec.eigenvalues
        gap = float(np.max(np.abs(lam + lam[::-1])))
        if gap > SYMMETRY_TOL * max(1.0, float(np.max(np.abs(lam)))):
            raise IdentityViolation(f"Dirac spectrum not symmetric under negation (gap {gap:.3e})")
        bound = math.sqrt(2 * maximal_simplex_degree(c))
        if float(np.max(np.abs(lam))) > bound + SYMMETRY_TOL:
            raise IdentityViolation("Dirac eigenvalue exceeds sqrt(2 deg)")
    return spec


def laplacian_spectra(c: SimplicialComplex) -> list:
    """One Spectrum (with eigenvectors) per block L_p."""
    out = []
    for p, block in enumerate(laplacian(c).blocks):
        key = ("Lspec", p)
        if key not in c._cache:
            c._cache[key] = eigen_sym(block)
        out.append(c._cache[key])
    return out


def laplacian_spectrum(c: SimplicialComplex) -> Spectrum:
    """All Laplacian eigenvalues, ascending, graded by form degree."""
    parts = laplacian_spectra(c)
    if not parts:
        return Spectrum(np.zeros(0), None, np.zeros(0, dtype=int), 0.0)
    lam = np.concatenate([s.eigenvalues for s in parts])
    grade = np.concatenate([np.full(len(s), p, dtype=int) for p, s in enumerate(parts)])
    order = np.argsort(lam, kind="stable")
    return Spectrum(lam[order], None, grade[order], zero_threshold(lam))


@dataclass(frozen=True)
class SuperTraceReport:
    description: str
    t: complex
    value: complex
    expected: int
    deviation: float
    # largest |exp(f(lambda))|; rounding error of the value scales with it
    scale: float


def supertrace(c: SimplicialComplex, f, t: complex = 1.0, description: str = "") -> SuperTraceReport:
    """str(exp(f(D))) from the Dirac eigendecomposition.

    ``f(x, t)`` must be vectorized over real arrays and satisfy f(0, t) = 0.
    The supertrace is the signed sum of the diagonal of U diag(e^f) U^T.
    """
    f0 = complex(f(np.zeros(1), t)[0])
    if abs(f0) > 1e-12:
        raise ValueError(f"f(0) must vanish, got {f0}")
    chi = euler_characteristic(c)
    if c.size == 0:
        return SuperTraceReport(description, complex(t), 0j, chi, 0.0, 1.0)
    spec = dirac_spectrum(c, check=False)
    ef = np.exp(f(spec.eigenvalues, t).astype(complex))
    value = complex(np.sum(spec.grading * ef))
    return SuperTraceReport(description, complex(t), value, chi, abs(value - chi),
                            float(np.max(np.abs(ef))))


# named test functions f(x, t) with f(0) = 0
FUNCTIONS = {
    "heat": lambda x, t: -t * x ** 2,
    "schrodinger": lambda x, t: 1j * t * x,
    "sine": lambda x, t: np.sin(t * np.asarray(x, dtype=complex)),
    "quartic": lambda x, t: t * x ** 4,
}


# well-conditioned sweep: |exp(f(lambda))| stays moderate for the spectra at hand
DEFAULT_COMBOS = (
    ("heat", 0.5),
    ("heat", 1 + 2j),
    ("schrodinger", 1.0),
    ("schrodinger", 1 + 2j),
    ("sine", 1.5),
    ("quartic", -1 + 0.5j),
)


def mckean_singer_sweep(c: SimplicialComplex, combos=DEFAULT_COMBOS) -> list:
    """Reports for (function name, t) pairs drawn from FUNCTIONS."""
    return [supertrace(c, FUNCTIONS[name], t, name) for name, t in combos]


def heat_supertrace_blocks(c: SimplicialComplex, t: complex) -> complex:
    """str(exp(-tL)) summed block by block over the Laplacian spectra."""
    return complex(sum((-1) ** p * np.sum(np.exp(-t * s.eigenvalues.astype(complex)))
                       for p, s in enumerate(laplacian_spectra(c))))


def dirac_complexity(c: SimplicialComplex, betti=None) -> tuple:
    """Product of the nonzero Dirac eigenvalues as (sign, natural log of |product|).

    The number of eigenvalues treated as zero is checked against the sum of
    the Betti numbers (exact ranks unless ``betti`` is given).
    """
    spec = dirac_spectrum(c)
    nz = spec.nonzero()
    if betti is None:
        from .hodge import betti as exact_betti
        betti = exact_betti(c)
    if spec.zero_count() != sum(betti):
        raise IdentityViolation(
            f"{spec.zero_count()} numerically zero Dirac eigenvalues but Betti sum {sum(betti)}")
    sign = -1 if int(np.sum(nz < 0)) % 2 else 1
    return sign, float(np.sum(np.log(np.abs(nz))))


def signless_euler_poincare(c: SimplicialComplex, betti=None) -> int:
    """sum_i (v_i - b_i) / 2, i.e. the number of +-lambda pairs of D."""
    if betti is None:
        from .hodge import betti as exact_betti
        betti = exact_betti(c)
    total = sum(c.f_vector) - sum(betti)
    if total % 2:
        raise IdentityViolation("sum of (v_i - b_i) is odd")
    return total // 2


@dataclass(frozen=True)
class MultiplicityRow:
    eigenvalue: float
    dims: tuple  # dim E_lambda^p for p = 0..top
    alternating_sum: int


def _clusters(values: np.ndarray, rtol: float) -> list:
    """Group sorted values; a new group starts where the gap exceeds rtol * max(1, |x|)."""
    order = np.argsort(values, kind="stable")
    groups = []
    for i in order:
        x = values[i]
        if groups and x - values[groups[-1][-1]] <= rtol * max(1.0, abs(x)):
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def multiplicity_pairing(c: SimplicialComplex) -> list:
    """dim E_lambda^p per Laplacian eigenvalue cluster lambda and degree p.

    The zero cluster holds the Betti numbers; every positive cluster has
    alternating sum 0.
    """
    spectra = laplacian_spectra(c)
    if not spectra:
        return []
    lam = np.concatenate([s.eigenvalues for s in spectra])
    grade = np.concatenate([np.full(len(s), p) for p, s in enumerate(spectra)])
    eps = zero_threshold(lam)
    lam = np.where(np.abs(lam) <= eps, 0.0, lam)
    groups = _clusters(lam, CLUSTER_RTOL)
    # a gap between neighbouring clusters that is suspiciously small
    for a, b in zip(groups, groups[1:]):
        gap = lam[b[0]] - lam[a[-1]]
        if gap <= 10 * eps and gap > 0:
            warnings.warn(f"eigenvalue clusters separated by only {gap:.3e}", RuntimeWarning)
    rows = []
    top = len(spectra)
    for g in groups:
        dims = [0] * top
        for i in g:
            dims[int(grade[i])] += 1
        alt = sum((-1) ** p * k for p, k in enumerate(dims))
        rows.append(MultiplicityRow(float(np.mean(lam[g])), tuple(dims), alt))
    return rows


def supertrace_powers_exact(c: SimplicialComplex, k: int) -> int:
    """str(L^k) in integer arithmetic."""
    total = 0
    for p, block in enumerate(laplacian(c).blocks):
        m = np.linalg.matrix_power(block.astype(object), k) if k else np.eye(block.shape[0], dtype=object)
        total += (-1) ** p * int(np.trace(m))
    return total


def supertrace_l_plus_one(c: SimplicialComplex) -> int:
    """str(L + 1) in integer arithmetic."""
    return sum((-1) ** p * (int(np.trace(b)) + b.shape[0]) for p, b in enumerate(laplacian(c).blocks))


def parse_complex_number(text: str) -> complex:
    """'1+2i', '-0.5', '3i', '2-1.5j' -> complex."""
    return complex(text.strip().replace(" ", "").replace("i", "j"))


__all__ = [
    "Spectrum", "DEFAULT_COMBOS", "SuperTraceReport", "MultiplicityRow", "IdentityViolation", "FUNCTIONS",
    "dirac_spectrum", "laplacian_spectra", "laplacian_spectrum", "supertrace",
    "mckean_singer_sweep", "heat_supertrace_blocks", "dirac_complexity",
    "signless_euler_poincare", "multiplicity_pairing", "supertrace_powers_exact",
    "supertrace_l_plus_one", "parse_complex_number", "eigen_sym",
]
