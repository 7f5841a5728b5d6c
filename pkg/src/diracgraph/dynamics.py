"""Heat, wave and Schrodinger evolution of cochains, and the discrete map T.

Cochains are numpy vectors indexed by the global simplex ordering of the
complex (length v). Functions of D come from the Dirac eigendecomposition;
D^{-1} always means the pseudo-inverse, zero on the harmonic forms.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex import SimplicialComplex
from .operators import dirac
from .spectral import dirac_spectrum, laplacian_spectra, parity_signs

KERNEL_TOL = 1e-8


class HarmonicVelocityError(ValueError):
    """Initial velocity of a wave has a component in ker D."""


def _check_length(c: SimplicialComplex, f) -> np.ndarray:
    f = np.asarray(f)
    if f.shape != (c.size,):
        raise ValueError(f"cochain must have length {c.size}, got shape {f.shape}")
    return f


def dirac_function(c: SimplicialComplex, fn) -> np.ndarray:
    """The matrix fn(D) for a vectorized scalar function ``fn``."""
    spec = dirac_spectrum(c, check=False)
    u = spec.eigenvectors
    return (u * fn(spec.eigenvalues)) @ u.T


def harmonic_projection(c: SimplicialComplex, f) -> np.ndarray:
    spec = dirac_spectrum(c, check=False)
    u = spec.eigenvectors[:, spec.zero_mask]
    return u @ (u.T @ f)


def heat_evolve(c: SimplicialComplex, f0, t: complex) -> np.ndarray:
    """exp(-tL) f0, applied block by block; ``t`` may be complex."""
    f0 = _check_length(c, f0)
    out = np.zeros(c.size, dtype=complex if np.iscomplexobj(f0) or np.iscomplex(t) else float)
    off = c.offsets
    for p, spec in enumerate(laplacian_spectra(c)):
        u = spec.eigenvectors
        part = f0[off[p]:off[p + 1]]
        out[off[p]:off[p + 1]] = u @ (np.exp(-t * spec.eigenvalues) * (u.T @ part))
    return out


def heat_supertrace(c: SimplicialComplex, t: complex) -> complex:
    """str(exp(-tL)) as the signed trace of the evolution operator."""
    total = 0j
    for p, spec in enumerate(laplacian_spectra(c)):
        total += (-1) ** p * np.sum(np.exp(-t * spec.eigenvalues.astype(complex)))
    return complex(total)


def _pinv_values(lam: np.ndarray, tol: float) -> np.ndarray:
    out = np.zeros_like(lam)
    nz = np.abs(lam) > tol
    out[nz] = 1.0 / lam[nz]
    return out


def wave_evolve(c: SimplicialComplex, u0, v0, t: float) -> tuple:
    """Solution of u'' = -L u: position cos(Dt)u0 + sin(Dt)D^{-1}v0 and its velocity."""
    u0 = _check_length(c, u0)
    v0 = _check_length(c, v0)
    spec = dirac_spectrum(c, check=False)
    u, lam = spec.eigenvectors, spec.eigenvalues
    a = u.T @ u0
    b = u.T @ v0
    zero = spec.zero_mask
    leak = float(np.linalg.norm(b[zero]))
    if leak > KERNEL_TOL * max(1.0, float(np.linalg.norm(v0))):
        raise HarmonicVelocityError(f"initial velocity has harmonic component {leak:.3e}")
    inv = _pinv_values(lam, spec.zero_tolerance)
    cos, sin = np.cos(lam * t), np.sin(lam * t)
    position = u @ (cos * a + sin * inv * b)
    velocity = u @ (-lam * sin * a + cos * b)
    return position, velocity


def wave_energy(c: SimplicialComplex, position, velocity) -> float:
    d = dirac(c).matrix
    return float(np.vdot(velocity, velocity).real + np.vdot(d @ position, d @ position).real)


def schrodinger_evolve(c: SimplicialComplex, psi0, t: float) -> np.ndarray:
    """exp(iDt) psi0."""
    psi0 = _check_length(c, psi0)
    spec = dirac_spectrum(c, check=False)
    u = spec.eigenvectors
    return u @ (np.exp(1j * spec.eigenvalues * t) * (u.T @ psi0))


def wave_to_schrodinger(c: SimplicialComplex, u0, v0) -> np.ndarray:
    """psi = u0 - i D^{-1} v0; its Schrodinger evolution has the wave as real part."""
    spec = dirac_spectrum(c, check=False)
    u = spec.eigenvectors
    inv = _pinv_values(spec.eigenvalues, spec.zero_tolerance)
    return np.asarray(u0, dtype=complex) - 1j * (u @ (inv * (u.T @ v0)))


def default_map_scale(c: SimplicialComplex) -> float:
    """0.9 * 2 / lambda_max(D), or 1 when D = 0."""
    spec = dirac_spectrum(c, check=False)
    top = float(np.max(np.abs(spec.eigenvalues))) if len(spec) else 0.0
    return 0.9 * 2.0 / top if top > spec.zero_tolerance else 1.0


def map_step(d: np.ndarray, f, g):
    return g - d @ f, f


def discrete_map(c: SimplicialComplex, f, g, steps: int, scale: float | None = None) -> tuple:
    """Iterate T(f, g) = (g - sDf, f) ``steps`` times with s = ``scale``."""
    if scale is None:
        scale = default_map_scale(c)
    if scale <= 0:
        raise ValueError("scale must be positive")
    d = scale * dirac(c).matrix
    f = _check_length(c, f)
    g = _check_length(c, g)
    for _ in range(steps):
        f, g = map_step(d, f, g)
    return f, g


def map_matrix(c: SimplicialComplex, scale=1) -> np.ndarray:
    """T as a 2v x 2v matrix acting on (f, g)."""
    v = c.size
    d = dirac(c).matrix
    dtype = np.int64 if isinstance(scale, int) else float
    t = np.zeros((2 * v, 2 * v), dtype=dtype)
    t[:v, :v] = -scale * d
    t[:v, v:] = np.eye(v, dtype=dtype)
    t[v:, :v] = np.eye(v, dtype=dtype)
    return t


def map_supertrace(c: SimplicialComplex, power: int = 2, scale=1):
    """str(T^power) over the doubled space, grading applied on both copies."""
    t = map_matrix(c, scale)
    m = np.linalg.matrix_power(t.astype(object) if isinstance(scale, int) else t, power)
    signs = np.concatenate([parity_signs(c), parity_signs(c)]).astype(int)
    diag = np.array([m[i, i] for i in range(m.shape[0])])
    total = sum(int(s) * x for s, x in zip(signs, diag))
    return int(total) if isinstance(scale, int) else float(total)


def map_supertrace_from_blocks(c: SimplicialComplex) -> int:
    """str(T^2) = str(1 + L) + str(1), read off the Laplacian block traces."""
    from .operators import laplacian
    total = 0
    for p, b in enumerate(laplacian(c).blocks):
        total += (-1) ** p * (int(np.trace(b)) + 2 * b.shape[0])
    return total


@dataclass(frozen=True)
class EvolutionTrace:
    times: np.ndarray
    states: tuple
    norms: np.ndarray
    supertraces: np.ndarray

    def __post_init__(self):
        if len(self.times) > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")


def evolve_series(c: SimplicialComplex, kind: str, t_final: float, steps: int,
                  rng: np.random.Generator | None = None) -> EvolutionTrace:
    """Sample an evolution from a random initial cochain on an even time grid.

    ``kind`` is heat, wave, schrodinger or map. For map, ``steps`` iterations
    of T are recorded and time is the step index.
    """
    rng = rng or np.random.default_rng(0)
    v = c.size
    f0 = rng.standard_normal(v)
    if kind == "map":
        g = rng.standard_normal(v)
        scale = default_map_scale(c)
        d = scale * dirac(c).matrix
        times, states, st = [], [], []
        f = f0
        for k in range(steps + 1):
            times.append(float(k))
            states.append(f.copy())
            st.append(map_supertrace(c, 2, scale))
            f, g = map_step(d, f, g)
        return EvolutionTrace(np.array(times), tuple(states),
                              np.array([np.linalg.norm(s) for s in states]), np.array(st))
    times = np.linspace(0.0, t_final, steps + 1)
    states, st = [], []
    if kind == "wave":
        v0 = rng.standard_normal(v)
        v0 = v0 - harmonic_projection(c, v0)
    for t in times:
        if kind == "heat":
            states.append(heat_evolve(c, f0, t))
            st.append(heat_supertrace(c, t))
        elif kind == "schrodinger":
            states.append(schrodinger_evolve(c, f0, t))
            st.append(np.sum(parity_signs(c) * np.diag(dirac_function(c, lambda x: np.exp(1j * t * x)))))
        elif kind == "wave":
            states.append(wave_evolve(c, f0, v0, t)[0])
            st.append(np.sum(parity_signs(c) * np.diag(dirac_function(c, lambda x: np.cos(t * x)))))
        else:
            raise ValueError(f"unknown evolution {kind!r}")
    return EvolutionTrace(times, tuple(states), np.array([np.linalg.norm(s) for s in states]),
                          np.array(st))
