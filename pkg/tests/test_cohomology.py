import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sextica.bundles import chi_RR
from sextica.cohomology import (
    build_es_F,
    build_es_Iw,
    cm_regularity_check,
    hypercoh_Iw5,
    phi11_contraction,
    plane_contact_section,
    sheaf_F_cohomology,
)
from sextica.defect import defect_hilbert
from sextica.errors import NonSplitError
from sextica.ideals import ideal_degree


def test_F_examples(section):
    assert sheaf_F_cohomology(section("Z31", 1), 2)[0] == 1
    S = section("Z35", 1)
    assert sheaf_F_cohomology(S, 4)[0] == sheaf_F_cohomology(S, 3)[0] + 12
    for name in ("Z31", "Z32", "Z35", "Z40", "A24"):
        assert sheaf_F_cohomology(section(name, 1), 0)[1] == 0


@pytest.mark.parametrize("name", ["Z31", "Z32", "Z35", "Z40", "A24"])
def test_riemann_roch_and_serre(name, run):
    c = run(name, 1)
    S = c.sample.section
    es = build_es_F(S)
    assert es.is_complex()
    d = S.spec.delta
    for n in range(-2, 9):
        h = sheaf_F_cohomology(S, n, es)
        assert h[0] - h[1] + h[2] == chi_RR(d, c.node_count, n)
        assert h == sheaf_F_cohomology(S, 2 + d - n, es)[::-1]


def test_es_Iw_terms(section):
    C = build_es_Iw(section("Z32", 1))
    assert sorted(C.terms[-2]) == [-3] * 3 and sorted(C.terms[-1]) == [-1] * 8 and sorted(C.terms[0]) == [1] * 6
    C = build_es_Iw(section("Z35", 1))
    assert sorted(C.terms[-2]) == [-2] * 15 and sorted(C.terms[-1]) == [-1] * 35 and sorted(C.terms[0]) == [0] * 21
    assert C.is_complex()


def test_es_Iw_refuses_lifted(section):
    with pytest.raises(NonSplitError):
        build_es_Iw(section("Z40", 1))


@pytest.mark.parametrize("name,want", [("Z32", (24, 0)), ("Z31", (25, 0)), ("Z35", (21, 0))])
def test_Iw5(name, want, run):
    c = run(name, 2)
    h = hypercoh_Iw5(c.sample.section)
    assert h == want
    assert h[1] == defect_hilbert(c.sample.w_ideal, 5).defect


def test_Iw5_control_family(run):
    c = run("A24", 2)
    h0, h1 = hypercoh_Iw5(c.sample.section)
    assert h1 == c.d_w >= 1 and h0 - h1 == 56 - 24


def test_regularity(section):
    assert cm_regularity_check(section("Z35", 1))
    assert cm_regularity_check(section("Z31", 1))
    S = plane_contact_section()
    assert not cm_regularity_check(S)
    assert sheaf_F_cohomology(S, 2)[2] > 0
    from sextica.determinantal import corank2_ideal

    assert ideal_degree(corank2_ideal(S)) == 15


def _antisym(rng, k, dv=4):
    A = rng.integers(-3, 4, (k, k, dv))
    return A - A.transpose(1, 0, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31), st.integers(1, 6))
def test_phi11_identity_is_killed(seed, k):
    rng = np.random.default_rng(seed)
    T = phi11_contraction(_antisym(rng, k), np.eye(k, dtype=int), rng.integers(-3, 4, 4))
    assert not np.any(T)


def test_phi11_rank_one_wedge():
    rng = np.random.default_rng(0)
    assert not np.any(phi11_contraction(np.zeros((1, 1, 4), dtype=int), rng.integers(-3, 4, (1, 1)), [1, 2, 3, 4]))
    P = np.zeros((2, 2, 4), dtype=int)
    P[0, 1, 0], P[1, 0, 0] = 1, -1
    for _ in range(5):
        xi = rng.integers(-3, 4, (2, 2))
        v = rng.integers(-3, 4, 4)
        T = phi11_contraction(P, xi, v)
        # the Lambda^2 V factor is a multiple of v ^ v_1
        wedge = np.outer(v, np.eye(4, dtype=int)[0]) - np.outer(np.eye(4, dtype=int)[0], v)
        w = wedge.ravel()
        for i in range(2):
            for j in range(2):
                b = T[i, j].astype(int).ravel()
                assert np.array_equal(np.outer(b, w), np.outer(w, b))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31), st.integers(2, 4))
def test_phi11_bilinear(seed, k):
    rng = np.random.default_rng(seed)
    P1, P2 = _antisym(rng, k), _antisym(rng, k)
    xi = rng.integers(-3, 4, (k, k))
    v = rng.integers(-3, 4, 4)
    a = phi11_contraction(P1 + P2, xi, v)
    assert np.array_equal(a, phi11_contraction(P1, xi, v) + phi11_contraction(P2, xi, v))
    xi2 = rng.integers(-3, 4, (k, k))
    assert np.array_equal(phi11_contraction(P1, xi + 2 * xi2, v),
                          phi11_contraction(P1, xi, v) + 2 * phi11_contraction(P1, xi2, v))


def test_phi11_dimension_mismatch():
    with pytest.raises(ValueError):
        phi11_contraction(np.zeros((2, 2, 4), dtype=int), np.eye(3, dtype=int), [1, 0, 0, 0])
