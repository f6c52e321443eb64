"""Hypercohomology of bounded complexes of split bundles on P^3.

Each term is a direct sum of line bundles O(t).  Only H^0 and H^3 of a
line bundle can be nonzero, so the first spectral sequence has two rows.
The only possible higher differential is d4 from row 3 to row 0; for
complexes spanning at most four consecutive positions it cannot act and
E2 already computes the hypercohomology.

H^0(O(t)) has the monomial basis of degree t.  H^3(O(t)) has the Čech
basis x^-a with all a_i >= 1 and |a| = -t; we index x^-a by the degree
(-t-4) monomial x^(a-1), and multiplication by x^c sends it to x^(a-1-c)
when that exponent is non-negative and to zero otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SexticaError
from .linalg import rank_mod
from .matrix import MatrixOfForms
from .poly import HomogeneousPoly, dim_component, mono_array, mono_index, product_table


def h0_dim(t: int) -> int:
    return dim_component(t)


def h3_dim(t: int) -> int:
    return dim_component(-t - 4)


def line_cohomology(t: int) -> list[int]:
    """[h^0, h^1, h^2, h^3] of O(t) on P^3."""
    return [h0_dim(t), 0, 0, h3_dim(t)]


def form_matrix(f: HomogeneousPoly, t: int, q: int) -> np.ndarray:
    """Matrix of multiplication by f from H^q(O(t)) to H^q(O(t + deg f))."""
    e = f.degree
    p = f.p
    if q == 0:
        src, dst = dim_component(t), dim_component(t + e)
        M = np.zeros((dst, src), dtype=np.int64)
        if src == 0 or dst == 0 or not f.terms:
            return M
        tab = product_table(e, t)
        cols = np.arange(src)
        for c, coef in f.terms.items():
            ci = mono_index(e, np.array([c], dtype=np.int64))[0]
            M[tab[ci], cols] = (M[tab[ci], cols] + coef) % p
        return M
    if q == 3:
        ds, dd = -t - 4, -(t + e) - 4
        src, dst = dim_component(ds), dim_component(dd)
        M = np.zeros((dst, src), dtype=np.int64)
        if src == 0 or dst == 0 or not f.terms:
            return M
        mons = mono_array(ds)
        for c, coef in f.terms.items():
            diff = mons - np.array(c, dtype=np.int64)
            ok = np.all(diff >= 0, axis=1)
            srcs = np.nonzero(ok)[0]
            if len(srcs):
                tgt = mono_index(dd, diff[ok])
                M[tgt, srcs] = (M[tgt, srcs] + coef) % p
        return M
    raise ValueError("line bundles on P^3 only have H^0 and H^3")


def block_matrix(A: MatrixOfForms, q: int, shift: int = 0) -> np.ndarray:
    """Induced map on H^q of the source sum to H^q of the target sum, after twisting by shift."""
    rt = [t + shift for t in A.row_twists]
    ct = [t + shift for t in A.col_twists]
    dim = h0_dim if q == 0 else h3_dim
    rdims = [dim(t) for t in rt]
    cdims = [dim(t) for t in ct]
    M = np.zeros((sum(rdims), sum(cdims)), dtype=np.int64)
    r0 = 0
    for i, t_i in enumerate(rt):
        c0 = 0
        for j, t_j in enumerate(ct):
            if rdims[i] and cdims[j]:
                f = A.entries[i][j]
                if f.terms:
                    M[r0:r0 + rdims[i], c0:c0 + cdims[j]] = form_matrix(f, t_j, q)
            c0 += cdims[j]
        r0 += rdims[i]
    return M


@dataclass
class SplitComplex:
    """Terms at integer positions; maps[k] goes from position k to k+1."""

    p: int
    terms: dict[int, list[int]]
    maps: dict[int, MatrixOfForms] = field(default_factory=dict)

    def twist(self, n: int) -> "SplitComplex":
        return SplitComplex(
            self.p,
            {k: [t + n for t in v] for k, v in self.terms.items()},
            {
                k: MatrixOfForms(self.p, [t + n for t in A.row_twists], [t + n for t in A.col_twists], A.entries)
                for k, A in self.maps.items()
            },
        )

    def positions(self) -> list[int]:
        return sorted(k for k, v in self.terms.items() if v)

    def is_complex(self) -> bool:
        for k, A in self.maps.items():
            B = self.maps.get(k + 1)
            if B is not None and not B.compose(A).is_zero():
                return False
        return True

    def check(self) -> None:
        for k, A in self.maps.items():
            if list(A.col_twists) != list(self.terms.get(k, [])) or list(A.row_twists) != list(self.terms.get(k + 1, [])):
                raise SexticaError(f"map at position {k} does not match the terms")


@dataclass
class E2Page:
    """E2 terms of the first hypercohomology spectral sequence, rows 0 and 3."""

    entries: dict[tuple[int, int], int]

    def get(self, p: int, q: int) -> int:
        return self.entries.get((p, q), 0)

    def hyper(self, k: int) -> int:
        return sum(v for (p, q), v in self.entries.items() if p + q == k)


def e2_page(C: SplitComplex) -> E2Page:
    pos = C.positions()
    if not pos:
        return E2Page({})
    if pos[-1] - pos[0] > 3:
        raise SexticaError("complex too long: a d4 differential could act")
    p = C.p
    out: dict[tuple[int, int], int] = {}
    for q in (0, 3):
        dim = h0_dim if q == 0 else h3_dim
        dims = {k: sum(dim(t) for t in C.terms[k]) for k in pos}
        ranks = {}
        for k in pos:
            A = C.maps.get(k)
            if A is None or not dims[k] or not dims.get(k + 1, 0):
                ranks[k] = 0
            else:
                ranks[k] = rank_mod(block_matrix(A, q), p)
        for k in pos:
            v = dims[k] - ranks[k] - ranks.get(k - 1, 0)
            if v:
                out[(k, q)] = v
    return E2Page(out)


def hypercohomology(C: SplitComplex) -> list[int]:
    """[H^0, H^1, H^2, H^3] of the complex (other degrees must vanish)."""
    page = e2_page(C)
    return [page.hyper(k) for k in range(4)]


def hypercohomology_all(C: SplitComplex) -> dict[int, int]:
    page = e2_page(C)
    out: dict[int, int] = {}
    for (p, q), v in page.entries.items():
        out[p + q] = out.get(p + q, 0) + v
    return out
