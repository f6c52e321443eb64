import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sextica.defect import (
    clemens_N,
    defect_eval,
    defect_hilbert,
    defect_monotonicity_check,
    ideal_of_points,
)
from sextica.determinantal import corank2_ideal
from sextica.errors import SexticaError
from sextica.ideals import GradedIdeal
from sextica.poly import parse_poly

P = 32003


def rand_points(rng, n):
    return [tuple(int(c) for c in rng.integers(0, P, 4)) for _ in range(n)]


def test_clemens_examples():
    assert [clemens_N(d) for d in (4, 6, 8)] == [2, 5, 8]
    with pytest.raises(ValueError):
        clemens_N(5)


def test_single_point():
    pt = GradedIdeal([parse_poly(f"x{i}", P) for i in (1, 2, 3)], saturated=True)
    r = defect_hilbert(pt, 5)
    assert (r.h0_IN, r.defect, r.point_count) == (55, 0, 1)
    assert defect_eval([(1, 0, 0, 0)], 5, P).defect == 0


def test_evaluation_examples():
    rng = np.random.default_rng(0)
    assert defect_eval(rand_points(rng, 57), 5, P).defect == 1
    line = [(1, i, 0, 0) for i in range(10)]
    assert defect_eval(line, 5, P).defect == 4


def test_repeated_points_rejected():
    with pytest.raises(SexticaError):
        defect_eval([(1, 2, 3, 4), (2, 4, 6, 8)], 5, P)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31), st.integers(1, 60))
def test_routes_agree(seed, n):
    pts = rand_points(np.random.default_rng(seed), n)
    a = defect_eval(pts, 5, P)
    b = defect_hilbert(ideal_of_points(pts, P), 5)
    assert a.defect == b.defect and a.h0_IN == b.h0_IN and b.point_count == n
    assert a.defect >= 0
    assert (a.defect == 0) == (n - a.defect == n)


def test_defect_of_pipeline_ideals(section):
    assert defect_hilbert(corank2_ideal(section("Z31", 1)), 5).defect == 0
    assert defect_hilbert(corank2_ideal(section("A24", 1)), 5).defect >= 1


def test_monotonicity_examples():
    rng = np.random.default_rng(1)
    pts = rand_points(rng, 57)
    big = ideal_of_points(pts, P)
    small = ideal_of_points(pts[:5], P)
    assert defect_monotonicity_check(big, big, 5)
    assert defect_monotonicity_check(small, big, 5)
    assert defect_hilbert(small, 5).defect == 0
    with pytest.raises(SexticaError):
        defect_monotonicity_check(big, small, 5)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31))
def test_monotone_on_random_nested_sets(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 70))
    pts = rand_points(rng, n)
    k = int(rng.integers(1, n))
    idx = rng.permutation(n)[:k]
    sub = [pts[i] for i in idx]
    assert defect_eval(sub, 5, P).defect <= defect_eval(pts, 5, P).defect


def test_sing_contains_w_monotone(run):
    c = run("A24", 1)
    assert defect_monotonicity_check(c.sample.w_ideal, c.sample.sing_ideal, 5)
