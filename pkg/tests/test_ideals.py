import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from sextica.errors import DimensionError
from sextica.ideals import (
    GradedIdeal,
    groebner,
    hilbert_function,
    ideal_degree,
    ideal_equal,
    krull_dimension,
    probable_factor_degrees,
    projective_dimension,
    saturate_irrelevant,
    squarefree_eliminant,
)
from sextica.matrix import MatrixOfForms
from sextica.poly import HomogeneousPoly, parse_poly

P = 32003
X = sp.symbols("x0:4")


def F(s, p=P):
    return parse_poly(s, p)


def to_sympy(f):
    return sum(c * sp.prod([X[i] ** e[i] for i in range(4)]) for e, c in f.terms.items())


def sparse_random(rng, d, keep=3):
    g = HomogeneousPoly.random(P, d, rng)
    return HomogeneousPoly(P, d, {e: c for k, (e, c) in enumerate(g.terms.items()) if k % keep == 0})


@pytest.mark.parametrize("seed", range(4))
def test_groebner_matches_sympy(seed):
    rng = np.random.default_rng(seed)
    degs = [2, 2, 3] if seed % 2 else [2, 3, 3, 2]
    gens = [sparse_random(rng, d) for d in degs]
    ours = sorted(str(sp.Poly(to_sympy(g), *X, modulus=P).monic().as_expr()) for g in groebner(GradedIdeal(gens)))
    G = sp.groebner([to_sympy(g) for g in gens], *X, order="grevlex", modulus=P)
    theirs = sorted(str(sp.Poly(g, *X, modulus=P).monic().as_expr()) for g in G.exprs)
    assert ours == theirs


def test_groebner_trivial_examples():
    assert groebner(GradedIdeal([F("x0"), F("x0")])) == [F("x0")]
    B = groebner(GradedIdeal([F("x0*x1"), F("x0*x2")]))
    assert sorted(b.to_str() for b in B) == sorted([F("x0*x1").to_str(), F("x0*x2").to_str()])


def test_groebner_is_canonical_under_generator_changes():
    rng = np.random.default_rng(5)
    g = [HomogeneousPoly.random(P, 2, rng) for _ in range(3)]
    I = GradedIdeal(g)
    J = GradedIdeal([g[0] + g[1], g[1], g[2] * 5, g[0]])
    assert ideal_equal(I, J)


def test_membership_soundness():
    rng = np.random.default_rng(9)
    g = [HomogeneousPoly.random(P, 2, rng) for _ in range(3)]
    I = GradedIdeal(g)
    assert all(I.contains(f) for f in g)
    combo = g[0] * HomogeneousPoly.random(P, 2, rng) + g[1] * HomogeneousPoly.random(P, 2, rng)
    assert I.contains(combo)
    assert not I.contains(HomogeneousPoly.random(P, 4, rng))


def test_saturation_examples():
    I = GradedIdeal([F("x0^2"), F("x0*x1"), F("x0*x2"), F("x0*x3")])
    assert ideal_equal(saturate_irrelevant(I), GradedIdeal([F("x0")]))
    pt = GradedIdeal([F("x1"), F("x2"), F("x3")])
    assert ideal_equal(saturate_irrelevant(pt), pt)


@pytest.mark.parametrize("seed", range(3))
def test_saturation_idempotent(seed):
    rng = np.random.default_rng(seed)
    m = sum(([F(f"x{i}")] for i in range(4)), [])
    base = [HomogeneousPoly.random(P, 2, rng) for _ in range(2)] + [HomogeneousPoly.random(P, 3, rng)]
    I = GradedIdeal([b * v for b in base for v in m[:2]] + [base[0] * base[0]])
    S = saturate_irrelevant(I, seed)
    S2 = saturate_irrelevant(GradedIdeal(S.basis), seed + 7)
    assert ideal_equal(S, S2)


def test_hilbert_function_examples():
    pt = GradedIdeal([F("x1"), F("x2"), F("x3")])
    assert [hilbert_function(pt, n) for n in range(6)] == [1] * 6
    m = GradedIdeal([F(f"x{i}") for i in range(4)])
    assert [hilbert_function(m, n) for n in range(1, 5)] == [0] * 4
    assert hilbert_function(pt, -1) == 0


def test_degree_and_dimension():
    pt = GradedIdeal([F("x1"), F("x2"), F("x3")])
    assert ideal_degree(pt) == 1 and projective_dimension(pt) == 0 and krull_dimension(pt) == 1
    rng = np.random.default_rng(2)
    ci = GradedIdeal([HomogeneousPoly.random(P, d, rng) for d in (2, 3, 4)])
    assert ideal_degree(ci) == 24
    with pytest.raises(DimensionError):
        ideal_degree(GradedIdeal([F("x0")]))


def test_corank_one_minors_of_symmetric_quadric_matrix_have_degree_32():
    rng = np.random.default_rng(4)
    e = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            e[i][j] = e[j][i] = HomogeneousPoly.random(P, 2, rng)
    M = MatrixOfForms(P, [-2] * 3, [-4] * 3, e)
    I = saturate_irrelevant(GradedIdeal(M.minors(2)))
    assert ideal_degree(I) == 32
    assert hilbert_function(I, 5) == 32


def test_symmetric_linear_6x6_corank2_degree_35():
    rng = np.random.default_rng(11)
    e = [[None] * 6 for _ in range(6)]
    for i in range(6):
        for j in range(i, 6):
            e[i][j] = e[j][i] = HomogeneousPoly.random(P, 1, rng)
    M = MatrixOfForms(P, [-3] * 6, [-4] * 6, e)
    I = saturate_irrelevant(GradedIdeal(M.minors(5)))
    assert ideal_degree(I) == 35
    deg = max(g.degree for g in I.basis)
    assert all(hilbert_function(I, n) == 35 for n in range(deg, deg + 3))


def test_ideal_equal_examples():
    I = GradedIdeal([F("x0")])
    assert ideal_equal(I, I)
    assert not ideal_equal(I, GradedIdeal([F("x0^2")]))


def test_eliminant_examples():
    rep = squarefree_eliminant(GradedIdeal([F("x1"), F("x2"), F("x3")]))
    assert rep["degree"] == 1 and rep["reduced"]
    fat = squarefree_eliminant(GradedIdeal([F("x1^2"), F("x2"), F("x3")]))
    assert fat["ideal_degree"] == 2 and not fat["reduced"]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**31))
def test_hilbert_function_of_points_is_monotone_and_stabilizes(seed):
    from sextica.defect import ideal_of_points

    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 25))
    pts = [tuple(int(c) for c in rng.integers(0, P, 4)) for _ in range(n)]
    I = ideal_of_points(pts, P)
    hf = [hilbert_function(I, k) for k in range(10)]
    assert hf == sorted(hf) and hf[-1] == n == ideal_degree(I)


def test_factor_probe():
    rng = np.random.default_rng(0)
    q, r = HomogeneousPoly.random(P, 2, rng), HomogeneousPoly.random(P, 4, rng)
    assert 2 in probable_factor_degrees(q * r)
    assert probable_factor_degrees(HomogeneousPoly.random(P, 6, rng)) == set()
