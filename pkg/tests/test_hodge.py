import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracgraph import build_complex, generate
from diracgraph.graph import erdos_renyi
from diracgraph.hodge import (betti, harmonic_basis, hodge_decompose, is_harmonic,
                              laplacian_kernel_agrees, numeric_betti)
from diracgraph.operators import d_matrix

from conftest import GENERATORS


@pytest.mark.parametrize("name,b", [("octahedron", (1, 0, 1)), ("icosahedron", (1, 0, 1)),
                                    ("cube", (1, 5)), ("dodecahedron", (1, 11)),
                                    ("petersen", (1, 6)), ("tetrahedron", (1, 0, 0, 0))])
def test_betti_fixed(name, b):
    assert betti(build_complex(generate(name))) == b


@pytest.mark.parametrize("n", range(4, 12))
def test_betti_cycles(n):
    assert betti(build_complex(generate("cycle", n))) == (1, 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_betti_complete(n):
    assert betti(build_complex(generate("complete", n))) == (1,) + (0,) * (n - 1)


def test_disjoint_union_adds_components():
    from diracgraph import Graph
    g = Graph(7, frozenset({(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (3, 6)}))
    assert betti(build_complex(g)) == (2, 1, 0)


def test_exact_and_numeric_agree(gen_complex):
    _, c = gen_complex
    assert laplacian_kernel_agrees(c)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_exact_and_numeric_agree_random(seed):
    g = erdos_renyi(9, 0.45, random.Random(seed))
    c = build_complex(g)
    assert betti(c) == numeric_betti(c)


def test_harmonic_basis_is_harmonic(gen_complex):
    _, c = gen_complex
    for p in range(c.dimension + 1):
        h = harmonic_basis(c, p)
        assert h.shape[1] == betti(c)[p]
        for k in range(h.shape[1]):
            assert is_harmonic(c, p, h[:, k])


def test_hodge_decomposition_random(gen_complex):
    _, c = gen_complex
    rng = np.random.default_rng(7)
    for p in range(c.dimension + 1):
        for _ in range(5):
            g = rng.standard_normal(c.f_vector[p])
            h = hodge_decompose(c, p, g)
            assert np.allclose(h.total(), g, atol=1e-10)
            parts = (h.exact, h.coexact, h.harmonic)
            for i in range(3):
                for j in range(i + 1, 3):
                    assert abs(parts[i] @ parts[j]) <= 1e-8
            # exact part is d of something, coexact part is killed by d^T below
            assert np.allclose(d_matrix(c, p) @ h.exact, 0, atol=1e-9)
            assert np.allclose(d_matrix(c, p - 1).T @ h.coexact, 0, atol=1e-9)


def test_hodge_errors():
    c = build_complex(generate("cycle", 4))
    with pytest.raises(ValueError):
        hodge_decompose(c, 1, np.zeros(3))
    with pytest.raises(ValueError):
        hodge_decompose(c, 2, np.zeros(1))
    with pytest.raises(ValueError):
        harmonic_basis(c, 5)
