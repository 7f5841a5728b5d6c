import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracgraph import Graph, build_complex, euler_characteristic, generate
from diracgraph.geometry import (closed_path_parity, compare_block_spectra, count_paths, curvature,
                                 dirac_power_entry, handshake_check, isospectral_check,
                                 lidskii_check, lifting_holds, p_degree, signed_unsigned_mismatches,
                                 simplex_distance, spectral_distance)
from diracgraph.graph import add_pyramid, erdos_renyi
from diracgraph.operators import dirac

from conftest import GENERATORS, cospectral_triangle_free_pairs

TRI = build_complex(generate("complete", 3))


def test_p_degree_examples():
    assert all(p_degree(TRI, e) == 1 for e in TRI.simplices_by_dim[1])
    oct_ = build_complex(generate("octahedron"))
    assert all(p_degree(oct_, e) == 2 for e in oct_.simplices_by_dim[1])
    assert p_degree(build_complex(Graph(3, frozenset({(0, 1)}))), (2,)) == 0
    with pytest.raises(ValueError):
        p_degree(TRI, (0, 3))


def test_p_degree_on_all_simplices(gen_complex):
    _, c = gen_complex
    for s in c.simplices():
        p_degree(c, s)  # raises on disagreement


def test_handshake_octahedron():
    rows = handshake_check(build_complex(generate("octahedron"))).rows
    assert rows[0].trace == 24 == rows[0].literal


def test_handshake_corrected_form(gen_complex):
    _, c = gen_complex
    rep = handshake_check(c)
    assert rep.holds
    # the bare (p+2) v_{p+1} form only survives at p = 0
    assert [r.literal_holds for r in rep.rows] == [r.p == 0 for r in rep.rows]


def test_handshake_edgeless_and_top():
    rep = handshake_check(build_complex(Graph(3, frozenset())))
    assert rep.rows[0].trace == 0 and rep.literal_holds
    top = handshake_check(TRI).rows[-1]
    assert top.trace == 3 == top.corrected and top.literal == 0


def test_triangle_path_counts():
    assert [count_paths(TRI, s, s, 4) for s in [(0,), (0, 1), (0, 1, 2)]] == [6, 9, 9]
    assert count_paths(TRI, (0,), (0,), 0) == 1
    assert count_paths(TRI, (0,), (1,), 0) == 0
    assert count_paths(TRI, (0,), (0, 1), 1) == 1
    with pytest.raises(ValueError):
        count_paths(TRI, (0,), (5,), 2)


def test_triangle_dirac_powers():
    assert dirac_power_entry(TRI, (0,), (0,), 4) == 6
    d4 = np.linalg.matrix_power(dirac(TRI).matrix, 4)
    assert np.trace(d4) == 54
    assert closed_path_parity(TRI, 2) == (27, 27)
    for s in TRI.simplices():
        assert dirac_power_entry(TRI, s, s, 3) == 0


def test_parity_all_generators(gen_complex):
    _, c = gen_complex
    for k in (1, 2, 3):
        even, odd = closed_path_parity(c, k)
        assert even == odd


@pytest.mark.parametrize("name,n", [("complete", 3), ("cycle", 4), ("complete", 4)])
@pytest.mark.parametrize("k", [1, 2])
def test_signed_and_unsigned_counts_agree_short(name, n, k):
    c = build_complex(generate(name, n))
    assert signed_unsigned_mismatches(c, 2 * k) == []


def test_signed_and_unsigned_counts_differ_at_length_six():
    # sign cancellation: D^6 at a triangle vertex is 18, but 22 corridor walks return
    bad = signed_unsigned_mismatches(TRI, 6)
    assert ((0,), 18, 22) in bad


@pytest.mark.parametrize("name,n,k", [("cycle", 7, Fraction(0)), ("complete", 3, Fraction(1, 3)),
                                      ("octahedron", None, Fraction(1, 3)),
                                      ("icosahedron", None, Fraction(1, 6))])
def test_curvature_examples(name, n, k):
    rep = curvature(generate(name, n))
    assert set(rep.curvatures) == {k}
    assert rep.holds


def test_curvature_isolated_vertex():
    rep = curvature(Graph(2, frozenset()))
    assert rep.curvatures == (1, 1) and rep.total == 2 and rep.sphere_counts == ((), ())


def test_gauss_bonnet_generators(gen_complex):
    name, c = gen_complex
    rep = curvature(GENERATORS[name])
    assert rep.total == euler_characteristic(c) and rep.curvatures == rep.operator_curvatures


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 12), st.integers(0, 10_000))
def test_gauss_bonnet_random(n, seed):
    g = erdos_renyi(n, 0.4, random.Random(seed))
    rep = curvature(g)
    assert rep.holds


def test_distances_worked():
    path3 = build_complex(generate("path", 3))
    assert simplex_distance(TRI, path3) == Fraction(2, 7)
    assert simplex_distance(TRI, TRI) == 0
    rep = spectral_distance(TRI, path3)
    # sorted pairing of {-r3^3, 0, r3^3} with {-r3, -1, 0, 0, 0, 1, r3}
    assert rep.spectral_distance == pytest.approx((4 * math.sqrt(3) - 2) / 7, abs=1e-12)
    assert rep.holds


def test_wheel_pyramid_distance():
    w = generate("wheel", 4)
    rep = spectral_distance(build_complex(w), build_complex(add_pyramid(w, 1, 2)))
    assert rep.simplex_distance == Fraction(4, 21)
    assert rep.spectral_distance == pytest.approx(0.337998, abs=1e-6)
    assert rep.max_degree_used == 4 and rep.lidskii_bound == pytest.approx(32 / 21)


def test_distance_to_self_is_zero(gen_complex):
    _, c = gen_complex
    rep = spectral_distance(c, c)
    assert rep.spectral_distance == pytest.approx(0, abs=1e-12) and rep.simplex_distance == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_lidskii_bound_random_pairs(seed):
    rng = random.Random(seed)
    g, h = erdos_renyi(7, 0.5, rng), erdos_renyi(7, 0.5, rng)
    assert spectral_distance(build_complex(g), build_complex(h)).holds


def test_lidskii_check_examples():
    a = np.diag([1.0, 0.0])
    assert lidskii_check(a, a) == (0.0, 0.0, True)
    lhs, rhs, ok = lidskii_check(a, np.diag([0.0, 1.0]))
    assert lhs == pytest.approx(0) and rhs == 2 and ok
    with pytest.raises(ValueError):
        lidskii_check(a, np.eye(3))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31))
def test_lidskii_random_symmetric(seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(-1, 2, (5, 5)).astype(float)
    a = a + a.T
    p = rng.integers(-1, 2, (5, 5)).astype(float)
    assert lidskii_check(a, a + p + p.T)[2]


@pytest.mark.parametrize("level", ["adjacency", "L0", "all_forms", "dirac"])
def test_isospectral_self(level, gen_complex):
    _, c = gen_complex
    assert isospectral_check(c, c, level).isospectral


def test_isospectral_reports_differing_level():
    l0 = np.array([[1.0, -1.0], [-1.0, 1.0]])
    v = compare_block_spectra([l0, np.eye(3), np.diag([4.0, 2.0])], [l0, np.eye(3), np.diag([3.0, 3.0])])
    assert not v.isospectral and v.differing == ("L2",)
    with pytest.raises(ValueError):
        isospectral_check(TRI, TRI, "spin")


def test_isospectral_detects_difference():
    c4, p4 = build_complex(generate("cycle", 4)), build_complex(generate("path", 4))
    for level in ("adjacency", "L0", "all_forms", "dirac"):
        assert not isospectral_check(c4, p4, level).isospectral


def test_lifting_on_small_graphs():
    pairs = cospectral_triangle_free_pairs()
    assert pairs
    assert all(lifting_holds(a, b) for a, b in pairs)
    assert lifting_holds(TRI, TRI) is None
