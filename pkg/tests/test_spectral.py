import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracgraph import build_complex, euler_characteristic, generate
from diracgraph.hodge import betti
from diracgraph.operators import maximal_simplex_degree
from diracgraph.spectral import (DEFAULT_COMBOS, FUNCTIONS, dirac_complexity, dirac_spectrum,
                                 heat_supertrace_blocks, laplacian_spectra, mckean_singer_sweep,
                                 multiplicity_pairing, parse_complex_number, signless_euler_poincare,
                                 supertrace, supertrace_l_plus_one, supertrace_powers_exact)

from conftest import GENERATORS

S5 = math.sqrt(5)


def block_spectra(name, n=None):
    return [s.eigenvalues for s in laplacian_spectra(build_complex(generate(name, n)))]


def same(a, b, tol=1e-8):
    a, b = np.sort(np.asarray(a, float)), np.sort(np.asarray(b, float))
    return a.shape == b.shape and np.allclose(a, b, atol=tol, rtol=0)


def test_c4_bosonic_and_fermionic():
    l0, l1 = block_spectra("cycle", 4)
    assert same(l0, [0, 2, 2, 4]) and same(l1, [0, 2, 2, 4])


def test_triangle_blocks():
    l0, l1, l2 = block_spectra("complete", 3)
    assert same(l0, [0, 3, 3]) and same(l1, [3, 3, 3]) and same(l2, [3])


def test_octahedron_blocks():
    l0, l1, l2 = block_spectra("octahedron")
    assert same(l0, [0, 4, 4, 4, 6, 6])
    assert same(l1, [2, 2, 2] + [4] * 6 + [6, 6, 6])
    assert same(l2, [0, 2, 2, 2, 4, 4, 4, 6])


def test_icosahedron_blocks():
    l0, l1, l2 = block_spectra("icosahedron")
    irr = [3 - S5, 5 - S5, 3 + S5, 5 + S5]
    nonzero = [2] * 5 + [3] * 4 + [5] * 4 + [6] * 5 + [x for x in irr for _ in range(3)]
    assert same(np.concatenate([l0, l2]), [0, 0] + nonzero)
    assert same(l1, nonzero)


@pytest.mark.parametrize("n", range(2, 7))
def test_complete_graph_dirac_spectrum(n):
    spec = dirac_spectrum(build_complex(generate("complete", n)))
    k = 2 ** (n - 1) - 1
    assert same(spec.eigenvalues, [-math.sqrt(n)] * k + [0] + [math.sqrt(n)] * k)


def test_dirac_spectrum_symmetric_and_bounded(gen_complex):
    name, c = gen_complex
    lam = dirac_spectrum(c).eigenvalues
    assert np.allclose(np.sort(lam), np.sort(-lam), atol=1e-9)
    assert np.abs(lam).max() <= math.sqrt(2 * maximal_simplex_degree(c)) + 1e-9


def test_zero_count_equals_betti_sum(gen_complex):
    _, c = gen_complex
    assert dirac_spectrum(c).zero_count() == sum(betti(c))


def test_bosonic_weights_are_zero_off_kernel(gen_complex):
    _, c = gen_complex
    spec = dirac_spectrum(c)
    assert np.allclose(spec.grading[~spec.zero_mask], 0, atol=1e-8)
    assert spec.grading.sum() == pytest.approx(euler_characteristic(c))


@pytest.mark.parametrize("name,sign,factors", [
    ("tetrahedron", -1, {2: 14}),
    ("octahedron", 1, {2: 18, 3: 3}),
    ("cube", -1, {2: 10, 3: 1}),
    ("dodecahedron", -1, {2: 11, 3: 4, 5: 4}),
    ("icosahedron", 1, {2: 22, 3: 9, 5: 7}),
])
def test_platonic_complexity(name, sign, factors):
    s, logmag = dirac_complexity(build_complex(generate(name)))
    expected = sum(k * math.log(p) for p, k in factors.items())
    assert s == sign and logmag == pytest.approx(expected, rel=1e-6)


@pytest.mark.parametrize("n", range(4, 10))
def test_cycle_complexity(n):
    # n >= 4: C_3 is the filled triangle
    s, logmag = dirac_complexity(build_complex(generate("cycle", n)))
    assert s == (-1) ** (n - 1) and logmag == pytest.approx(2 * math.log(n))


@pytest.mark.parametrize("n", range(1, 8))
def test_tree_complexity(n):
    # trees with v0 vertices have complexity (-1)^(v0-1) v0
    s, logmag = dirac_complexity(build_complex(generate("path", n)))
    assert s == (-1) ** (n - 1) and logmag == pytest.approx(math.log(n), abs=1e-12)
    s, logmag = dirac_complexity(build_complex(generate("star", n)))
    assert s == (-1) ** n and logmag == pytest.approx(math.log(n + 1))
    lam = dirac_spectrum(build_complex(generate("star", n))).eigenvalues
    assert lam.max() == pytest.approx(math.sqrt(n + 1))


@pytest.mark.parametrize("n", range(2, 7))
def test_complete_complexity(n):
    k = 2 ** (n - 1) - 1
    s, logmag = dirac_complexity(build_complex(generate("complete", n)))
    assert s == (-1) ** k and logmag == pytest.approx(k * math.log(n))


def test_signless_euler_poincare(gen_complex):
    _, c = gen_complex
    lam = dirac_spectrum(c).eigenvalues
    assert signless_euler_poincare(c) == int(np.sum(lam > 1e-8))


def test_multiplicity_pairing(gen_complex):
    _, c = gen_complex
    rows = multiplicity_pairing(c)
    zero = rows[0]
    assert zero.eigenvalue == 0 and zero.dims == betti(c)
    assert all(r.alternating_sum == 0 for r in rows[1:])


def test_mckean_singer_default_sweep(gen_complex):
    _, c = gen_complex
    for r in mckean_singer_sweep(c):
        assert r.deviation <= 1e-8 * c.size, (r.description, r.t)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(GENERATORS)), st.sampled_from(sorted(FUNCTIONS)),
       st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_mckean_singer_any_t(name, fname, t):
    c = build_complex(GENERATORS[name])
    r = supertrace(c, FUNCTIONS[fname], t, fname)
    if not np.isfinite(r.scale) or r.scale > 1e12:
        return  # exp(f(lambda)) overflows double precision
    assert r.deviation <= 1e-8 * c.size * max(1.0, r.scale)


def test_heat_supertrace_blocks_constant():
    c = build_complex(generate("complete", 3))
    for t in (0.0, 0.3, 2.0, 1 + 1j):
        assert abs(heat_supertrace_blocks(c, t) - 1) < 1e-12


def test_supertrace_requires_f_zero():
    c = build_complex(generate("cycle", 4))
    with pytest.raises(ValueError):
        supertrace(c, lambda x, t: x + 1, 1.0)


def test_exact_supertraces(gen_complex):
    _, c = gen_complex
    chi = euler_characteristic(c)
    assert supertrace_powers_exact(c, 0) == chi
    for k in (1, 2, 3):
        assert supertrace_powers_exact(c, k) == 0
    assert supertrace_l_plus_one(c) == chi


def test_empty_complex():
    from diracgraph import Graph
    c = build_complex(Graph(0, frozenset()))
    assert len(dirac_spectrum(c)) == 0
    assert dirac_complexity(c) == (1, 0.0)
    assert supertrace(c, FUNCTIONS["heat"], 1.0).deviation == 0


def test_cluster_warning_is_quiet_for_generators(gen_complex):
    _, c = gen_complex
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        multiplicity_pairing(c)


def test_default_combos_cover_required_cases():
    assert ("schrodinger", 1 + 2j) in DEFAULT_COMBOS and len(DEFAULT_COMBOS) == 6


@pytest.mark.parametrize("text,value", [("1+2i", 1 + 2j), ("-0.5", -0.5), ("3i", 3j),
                                        ("2-1.5j", 2 - 1.5j), (" 1 + 2i ", 1 + 2j)])
def test_parse_complex_number(text, value):
    assert parse_complex_number(text) == value
