"""Failure of a finite point set to impose independent conditions on forms of degree N."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, SexticaError
from .ideals import GradedIdeal, hilbert_function, ideal_degree, krull_dimension, saturate_irrelevant
from .linalg import nullspace_mod, rank_mod
from .poly import HomogeneousPoly, check_char, dim_component, mono_array


@dataclass(frozen=True)
class DefectReport:
    N: int
    point_count: int
    h0_IN: int
    defect: int
    method: str  # "hilbert" or "evaluation"

    def to_json(self) -> dict:
        return dict(self.__dict__)


def clemens_N(deg_B: int) -> int:
    """Degree of forms whose conditions measure the defect of a nodal surface of even degree."""
    if deg_B < 2 or deg_B % 2:
        raise ValueError("degree must be even and at least 2")
    return 3 * deg_B // 2 - 4


def defect_hilbert(I: GradedIdeal, N: int) -> DefectReport:
    """Defect from the Hilbert function of a saturated ideal of a finite scheme."""
    if not I.saturated:
        I = saturate_irrelevant(I)
    if krull_dimension(I) > 1:
        raise DimensionError("defect needs a zero-dimensional scheme")
    deg = ideal_degree(I)
    total = dim_component(N)
    hf = hilbert_function(I, N)
    return DefectReport(N, deg, total - hf, deg - hf, "hilbert")


def normalize_point(pt, p: int) -> tuple[int, ...]:
    pt = [int(c) % p for c in pt]
    if len(pt) != 4:
        raise ValueError("points of P^3 have four coordinates")
    lead = next((c for c in pt if c), None)
    if lead is None:
        raise ValueError("the zero vector is not a point")
    inv = pow(lead, p - 2, p)
    return tuple(c * inv % p for c in pt)


def _distinct(points, p: int) -> list[tuple[int, ...]]:
    pts = [normalize_point(q, p) for q in points]
    if len(set(pts)) != len(pts):
        raise SexticaError("repeated points")
    return pts


def evaluation_matrix(points, N: int, p: int) -> np.ndarray:
    """Rows are points, columns are the degree-N monomials."""
    mons = mono_array(N)
    P = np.array(points, dtype=np.int64) % p
    M = np.ones((len(points), len(mons)), dtype=np.int64)
    for v in range(4):
        pw = np.ones((len(points), int(mons[:, v].max(initial=0)) + 1), dtype=np.int64)
        for e in range(1, pw.shape[1]):
            pw[:, e] = pw[:, e - 1] * P[:, v] % p
        M = M * pw[:, mons[:, v]] % p
    return M


def defect_eval(points, N: int, p: int | None = None) -> DefectReport:
    """Defect as the left nullity of the evaluation matrix."""
    p = check_char(p or 32003)
    pts = _distinct(points, p)
    r = rank_mod(evaluation_matrix(pts, N, p), p)
    n = len(pts)
    return DefectReport(N, n, dim_component(N) - r, n - r, "evaluation")


def ideal_of_points(points, p: int | None = None) -> GradedIdeal:
    """Saturated ideal of distinct rational points, from kernels of evaluation maps."""
    p = check_char(p or 32003)
    pts = _distinct(points, p)
    n = len(pts)
    gens: list[HomogeneousPoly] = []
    d = 1
    reached = None
    while True:
        K = nullspace_mod(evaluation_matrix(pts, d, p), p)
        gens += [HomogeneousPoly.from_dense(p, d, row) for row in K]
        if reached is None and dim_component(d) - K.shape[0] == n:
            reached = d
        if reached is not None and d >= reached + 1:
            break
        d += 1
    return GradedIdeal(gens, p=p, saturated=True)


def defect_monotonicity_check(I_sub: GradedIdeal, I_sup: GradedIdeal, N: int) -> bool:
    """d(sub) <= d(sup) for point sets V(I_sub) contained in V(I_sup)."""
    if not I_sup.is_subset_of(I_sub):
        raise SexticaError("zero set of the first ideal is not contained in that of the second")
    return defect_hilbert(I_sub, N).defect <= defect_hilbert(I_sup, N).defect
