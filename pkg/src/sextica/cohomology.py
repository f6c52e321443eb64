"""Complexes built from a symmetric section and their hypercohomology.

F = coker(E^v(-s) -> E) with s = 6 + delta.  For split E this is the
two-term complex at positions -1, 0.  When E has Omega(t) summands the
lifted frame L replaces E and each block is closed off by the variable
column and row, giving

    O(-t-s) -> L^v(-s) -> L -> O(t)     at positions -2 .. 1

which is quasi-isomorphic to F.  The resolution of I_w(5)

    Lambda^2 E^v(-s-1) -> sl(E)(-1) -> S^2 E(s-1)

is built only for split E.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bundles import chi_RR
from .complexes import SplitComplex, e2_page, hypercohomology_all
from .determinantal import SymmetricSection
from .errors import NonSplitError, SexticaError
from .matrix import MatrixOfForms
from .poly import HomogeneousPoly


@dataclass
class BundleComplex:
    complex: SplitComplex
    provenance: str  # es_F, euler-replaced, es_Iw

    @property
    def terms(self) -> dict[int, list[int]]:
        return self.complex.terms

    @property
    def differentials(self) -> dict[int, MatrixOfForms]:
        return self.complex.maps

    def is_complex(self) -> bool:
        return self.complex.is_complex()


def _var(p: int, i: int, c: int = 1) -> HomogeneousPoly:
    e = [0, 0, 0, 0]
    e[i] = 1
    return HomogeneousPoly(p, 1, {tuple(e): c % p})


def build_es_F(section: SymmetricSection) -> BundleComplex:
    fr = section.frame
    A = section.realized
    p = section.p
    L = list(fr.row_twists)
    Ld = list(fr.col_twists)
    if not fr.blocks:
        C = SplitComplex(p, {-1: Ld, 0: L}, {-1: A})
        C.check()
        return BundleComplex(C, "es_F")
    n = len(L)
    tops = [t for t, _ in fr.blocks]
    bottoms = [-t - fr.s for t, _ in fr.blocks]
    down = [[None] * len(bottoms) for _ in range(n)]
    up = [[None] * n for _ in range(len(tops))]
    for b, (_, rows) in enumerate(fr.blocks):
        for a, r in enumerate(rows):
            down[r][b] = _var(p, a)
            up[b][r] = _var(p, a)
    C = SplitComplex(
        p,
        {-2: bottoms, -1: Ld, 0: L, 1: tops},
        {
            -2: MatrixOfForms(p, Ld, bottoms, down),
            -1: A,
            0: MatrixOfForms(p, tops, L, up),
        },
    )
    C.check()
    return BundleComplex(C, "euler-replaced")


def sheaf_F_cohomology(section: SymmetricSection, n: int, complex: BundleComplex | None = None) -> tuple[int, int, int]:
    """(h0, h1, h2) of F(n); h3 of F vanishes since F lives on a surface."""
    C = (complex or build_es_F(section)).complex.twist(n)
    H = hypercohomology_all(C)
    stray = {k: v for k, v in H.items() if k not in (0, 1, 2) and v}
    if stray:
        raise SexticaError(f"unexpected hypercohomology in degrees {sorted(stray)}")
    return H.get(0, 0), H.get(1, 0), H.get(2, 0)


def euler_char_F(section: SymmetricSection, n: int, node_count: int) -> tuple[int, int]:
    """(computed chi of F(n), Riemann-Roch value)."""
    h0, h1, h2 = sheaf_F_cohomology(section, n)
    return h0 - h1 + h2, chi_RR(section.spec.delta, node_count, n)


def cm_regularity_check(section: SymmetricSection, m: int = 4) -> bool:
    """F(m) is Castelnuovo-Mumford 0-regular: h^i(F(m-i)) = 0 for i = 1, 2, 3."""
    C = build_es_F(section)
    for i in (1, 2, 3):
        H = hypercohomology_all(C.complex.twist(m - i))
        if H.get(i, 0):
            return False
    return True


# ------------------------------------------------------------ resolution of I_w

def _sl_basis(r: int) -> list[tuple[int, int]]:
    """(k, l) with k != l for E_kl, (k, k) for E_kk - E_rr with k < r-1."""
    return [(k, l) for k in range(r) for l in range(r) if k != l] + [(k, k) for k in range(r - 1)]


def build_es_Iw(section: SymmetricSection) -> BundleComplex:
    if section.lifted:
        raise NonSplitError("resolution of I_w is built for split bundles only")
    Phi = section.realized
    p = section.p
    s = section.frame.s
    a = [-t for t in Phi.row_twists]  # E = sum O(-a_i)
    r = len(a)
    pairs = list(combinations(range(r), 2))
    sl = _sl_basis(r)
    sym = [(u, v) for u in range(r) for v in range(u, r)]
    t_l2 = [a[i] + a[j] - s - 1 for i, j in pairs]
    t_sl = [-a[k] + a[l] - 1 for k, l in sl]
    t_s2 = [-a[u] - a[v] + s - 1 for u, v in sym]
    sl_pos = {kl: i for i, kl in enumerate(sl)}

    def zero(d):
        return HomogeneousPoly.zero(p, d)

    psi = [[None] * len(pairs) for _ in sl]
    for c, (i, j) in enumerate(pairs):
        # X = Phi e_i (x) e_j^* - Phi e_j (x) e_i^*
        X: dict[tuple[int, int], HomogeneousPoly] = {}
        for k in range(r):
            X[(k, j)] = X.get((k, j), zero(Phi[k, i].degree)) + Phi[k, i]
            X[(k, i)] = X.get((k, i), zero(Phi[k, j].degree)) - Phi[k, j]
        for (k, l), f in X.items():
            if not f.terms:
                continue
            if k != l:
                psi[sl_pos[(k, l)]][c] = f
            elif k < r - 1:
                psi[sl_pos[(k, k)]][c] = f
    phi = [[None] * len(sl) for _ in sym]

    def image(k, l):
        # symmetrization of E_kl Phi: S[u,v] = d_uk Phi[l,v] + d_vk Phi[u,l]
        out = {}
        for row, (u, v) in enumerate(sym):
            f = None
            if u == k:
                f = Phi[l, v]
            if v == k:
                g = Phi[u, l]
                f = g if f is None else f + g
            if f is not None and f.terms:
                out[row] = f
        return out

    for c, (k, l) in enumerate(sl):
        col = image(k, l)
        if k == l:
            for row, f in image(r - 1, r - 1).items():
                col[row] = col[row] - f if row in col else -f
        for row, f in col.items():
            if f.terms:
                phi[row][c] = f
    C = SplitComplex(
        p,
        {-2: t_l2, -1: t_sl, 0: t_s2},
        {-2: MatrixOfForms(p, t_sl, t_l2, psi), -1: MatrixOfForms(p, t_s2, t_sl, phi)},
    )
    C.check()
    return BundleComplex(C, "es_Iw")


def hypercoh_Iw5(section: SymmetricSection, complex: BundleComplex | None = None) -> tuple[int, int]:
    """(h0, h1) of I_w(5) from the resolution."""
    C = complex or build_es_Iw(section)
    if C.provenance != "es_Iw":
        raise NonSplitError("expected the split resolution of I_w")
    H = hypercohomology_all(C.complex)
    return H.get(0, 0), H.get(1, 0)


# ------------------------------------------------------------ multilinear part

def phi11_contraction(Phi11, xi, v) -> np.ndarray:
    """Image of xi (x) v under the map attached to Phi11 in Lambda^2 W (x) V.

    Phi11[a, b, c] is antisymmetric in (a, b) and is the coefficient of
    (w_a ^ w_b) (x) v_c.  The element sum_{a<b,c} Phi11[a,b,c]
    (xi(w_a) w_b - xi(w_b) w_a) (x) (v ^ v_c) is returned as an array
    T[i, j, k, l] with w_i w_j -> E_ij + E_ji and v_k ^ v_l -> E_kl - E_lk.
    """
    P = np.asarray(Phi11, dtype=object)
    X = np.asarray(xi, dtype=object)
    v = np.asarray(v, dtype=object)
    if P.ndim != 3 or P.shape[0] != P.shape[1]:
        raise ValueError("Phi11 must have shape (k, k, dim V)")
    k, _, dv = P.shape
    if X.shape != (k, k) or v.shape != (dv,):
        raise ValueError("dimension mismatch")
    if any(P[a, b, c] != -P[b, a, c] for a in range(k) for b in range(k) for c in range(dv)):
        raise ValueError("Phi11 is not antisymmetric")
    T = np.zeros((k, k, dv, dv), dtype=object)
    eye_w = np.eye(k, dtype=int).astype(object)
    eye_v = np.eye(dv, dtype=int).astype(object)
    for a, b in combinations(range(k), 2):
        Y = (np.outer(X[:, a], eye_w[b]) + np.outer(eye_w[b], X[:, a])
             - np.outer(X[:, b], eye_w[a]) - np.outer(eye_w[a], X[:, b]))
        for c in range(dv):
            if P[a, b, c]:
                Z = np.outer(v, eye_v[c]) - np.outer(eye_v[c], v)
                T = T + P[a, b, c] * np.einsum("ij,kl->ijkl", Y, Z)
    return T


def phi11_rank(Phi11, p: int) -> int:
    """Rank over F_p of xi (x) v -> phi11(xi (x) v) as a linear map."""
    from .linalg import rank_mod

    P = np.asarray(Phi11, dtype=object)
    k, _, dv = P.shape
    cols = []
    for i in range(k):
        for j in range(k):
            xi = np.zeros((k, k), dtype=object)
            xi[i, j] = 1
            for c in range(dv):
                v = np.zeros(dv, dtype=object)
                v[c] = 1
                cols.append(np.array(phi11_contraction(P, xi, v).ravel(), dtype=object))
    M = np.array([[int(x) % p for x in col] for col in cols], dtype=np.int64)
    return rank_mod(M, p)


def e2_summary(C: BundleComplex) -> dict[str, int]:
    page = e2_page(C.complex)
    return {f"{p},{q}": v for (p, q), v in sorted(page.entries.items())}


def plane_contact_section(p: int = 32003, seed: int = 0) -> SymmetricSection:
    """Section of S^2(O(-1) + O(-3))(7) with a linear corner entry.

    The determinant q*l - c^2 is tangent to the plane l = 0 along the cubic
    c, and F(1) already has a section, so F(4) is not 0-regular.
    """
    from .bundles import BundleSpec
    from .determinantal import frame_of, section_from_matrix

    rng = np.random.default_rng([seed, 0x9C])
    spec = BundleSpec.make(1, (), {-1: 1, -3: 1})
    fr = frame_of(spec)
    deg = {(i, j): fr.entry_degree(i, j) for i in range(2) for j in range(2)}
    entries = [[None, None], [None, None]]
    for i in range(2):
        for j in range(i, 2):
            entries[i][j] = entries[j][i] = HomogeneousPoly.random(p, deg[(i, j)], rng)
    M = MatrixOfForms(p, fr.row_twists, fr.col_twists, entries)
    return section_from_matrix(spec, M, seed)
