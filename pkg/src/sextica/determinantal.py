"""Symmetric sections of S²E(6+delta), branch sextics and corank loci.

A section is realized as a symmetric matrix of forms on the lifted frame
L = sum over Omega(t) copies of O(t-1)^4, plus the line summands.  Each
Omega(t) copy is the kernel of contraction with (x0, x1, x2, x3), so the
section space is cut out of the symmetric matrices on L by the linear
conditions  block . x = 0.  For split E there are no conditions and the
lifted matrix is the usual one.  Pointwise the lifted matrix has the same
rank as the section, so Fitting ideals are read off its minors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .bundles import BundleSpec, spec_validate
from .errors import DegenerateError, SpecError
from .ideals import (
    GradedIdeal,
    ideal_degree,
    ideal_equal,
    krull_dimension,
    probable_factor_degrees,
    saturate_irrelevant,
    squarefree_eliminant,
)
from .linalg import nullspace_mod, solve_mod, upoly_is_squarefree
from .matrix import MatrixOfForms
from .poly import (
    HomogeneousPoly,
    LinearChange,
    _monomials,
    degrevlex_key,
    dim_component,
    mono_position,
)


@dataclass(frozen=True)
class Frame:
    """Twists of the lifted frame and the Omega blocks inside it."""

    row_twists: tuple[int, ...]
    blocks: tuple[tuple[int, tuple[int, ...]], ...]  # (omega twist t, row indices)
    s: int  # 6 + delta

    @property
    def col_twists(self) -> tuple[int, ...]:
        return tuple(-r - self.s for r in self.row_twists)

    def entry_degree(self, i: int, j: int) -> int:
        return self.row_twists[i] + self.row_twists[j] + self.s


def frame_of(spec: BundleSpec) -> Frame:
    rows: list[int] = []
    blocks = []
    for t in spec.omega_twists:
        idx = tuple(range(len(rows), len(rows) + 4))
        rows += [t - 1] * 4
        blocks.append((t, idx))
    rows += spec.line_twists
    return Frame(tuple(rows), tuple(blocks), 6 + spec.delta)


@dataclass
class SectionSpace:
    """Basis of the section space, each vector a coefficient list on the unknowns."""

    frame: Frame
    unknowns: list[tuple[int, int, tuple]]  # (i, j, monomial) with i <= j
    basis: np.ndarray  # rows span the space (identity for split specs)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


@lru_cache(maxsize=32)
def section_space(spec: BundleSpec, p: int) -> SectionSpace:
    fr = frame_of(spec)
    n = len(fr.row_twists)
    unknowns = []
    for i in range(n):
        for j in range(i, n):
            d = fr.entry_degree(i, j)
            if d >= 0:
                unknowns += [(i, j, m) for m in _monomials(d)]
    if not fr.blocks:
        return SectionSpace(fr, unknowns, np.eye(len(unknowns), dtype=np.int64))
    # contraction conditions: for every block and column j, sum_a x_a A[row_a, j] = 0
    pos = {u: k for k, u in enumerate(unknowns)}
    eqs: dict[tuple, dict[int, int]] = {}
    for _, rows in fr.blocks:
        for j in range(n):
            for a, r in enumerate(rows):
                i0, j0 = min(r, j), max(r, j)
                d = fr.entry_degree(i0, j0)
                if d < 0:
                    continue
                for m in _monomials(d):
                    e = list(m)
                    e[a] += 1
                    key = (rows, j, tuple(e))
                    row = eqs.setdefault(key, {})
                    k = pos[(i0, j0, m)]
                    row[k] = row.get(k, 0) + 1
    M = np.zeros((len(eqs), len(unknowns)), dtype=np.int64)
    for r, row in enumerate(eqs.values()):
        for k, v in row.items():
            M[r, k] = v % p
    return SectionSpace(fr, unknowns, nullspace_mod(M, p))


@dataclass
class SymmetricSection:
    spec: BundleSpec
    seed: int
    p: int
    coefficients: list[int]
    realized: MatrixOfForms
    frame: Frame = field(repr=False)

    @property
    def lifted(self) -> bool:
        return bool(self.frame.blocks)

    @property
    def rank(self) -> int:
        return self.spec.rank

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "seed": self.seed,
            "char": self.p,
            "coefficients": [str(c) for c in self.coefficients],
            "realized": self.realized.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> "SymmetricSection":
        spec = BundleSpec.from_json(obj["spec"])
        p = int(obj["char"])
        M = MatrixOfForms.from_json(obj["realized"])
        return cls(spec, int(obj["seed"]), p, [int(c) for c in obj["coefficients"]], M, frame_of(spec))


def section_from_coefficients(spec: BundleSpec, p: int, coeffs, seed: int = 0) -> SymmetricSection:
    space = section_space(spec, p)
    fr = space.frame
    coeffs = [int(c) % p for c in coeffs]
    if len(coeffs) != space.dim:
        raise SpecError(f"expected {space.dim} coefficients, got {len(coeffs)}")
    vec = np.zeros(len(space.unknowns), dtype=object)
    for c, b in zip(coeffs, space.basis):
        if c:
            vec = vec + c * b.astype(object)
    n = len(fr.row_twists)
    terms: dict[tuple[int, int], dict] = {}
    for k, (i, j, m) in enumerate(space.unknowns):
        v = int(vec[k]) % p
        if v:
            terms.setdefault((i, j), {})[m] = v
    entries = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            d = fr.entry_degree(i, j)
            f = HomogeneousPoly(p, d, terms.get((i, j), {})) if d >= 0 else None
            entries[i][j] = entries[j][i] = f
    M = MatrixOfForms(p, fr.row_twists, fr.col_twists, entries)
    return SymmetricSection(spec, seed, p, coeffs, M, fr)


def sample_phi(spec: BundleSpec, seed: int, p: int, attempt: int = 0) -> SymmetricSection:
    """Uniform random section; deterministic in (spec, seed, p, attempt)."""
    v = spec_validate(spec)
    if not v.accepted:
        raise SpecError(v.reason)
    space = section_space(spec, p)
    rng = np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, int(attempt), p])
    coeffs = [int(c) for c in rng.integers(0, p, size=space.dim)]
    return section_from_coefficients(spec, p, coeffs, seed)


def section_from_matrix(spec: BundleSpec, M: MatrixOfForms, seed: int = 0) -> SymmetricSection:
    """Wrap an explicit symmetric matrix on the lifted frame."""
    fr = frame_of(spec)
    if tuple(M.row_twists) != fr.row_twists or tuple(M.col_twists) != fr.col_twists:
        raise SpecError("matrix twists do not match the spec")
    if not M.is_symmetric():
        raise SpecError("matrix is not symmetric")
    space = section_space(spec, M.p)
    vec = np.array([M.entries[i][j].terms.get(m, 0) for (i, j, m) in space.unknowns], dtype=np.int64)
    if fr.blocks:
        sol = solve_mod(space.basis.T, vec, M.p)
        if sol is None:
            raise SpecError("matrix violates the contraction conditions")
        coeffs = [int(c) for c in sol]
    else:
        coeffs = [int(c) for c in vec]
    return SymmetricSection(spec, seed, M.p, coeffs, M, fr)


def contraction_holds(section: SymmetricSection) -> bool:
    """Every Omega block of the lifted matrix is killed by the variable column."""
    M = section.realized
    p = section.p
    for _, rows in section.frame.blocks:
        for j in range(M.shape[1]):
            acc = None
            for a, r in enumerate(rows):
                f = M.entries[r][j]
                if f.terms:
                    e = [0, 0, 0, 0]
                    e[a] = 1
                    g = f.mul_monomial(tuple(e))
                    acc = g if acc is None else acc + g
            if acc is not None and acc.terms:
                return False
    return True


# ------------------------------------------------------------ fitting ideals

def fitting_generators(section: SymmetricSection, j: int) -> list[HomogeneousPoly]:
    """Minors of size rank(E) - j of the lifted matrix."""
    return [f for f in section.realized.minors(section.rank - j) if f.terms]


def branch_sextic(section: SymmetricSection, seed: int = 0) -> HomogeneousPoly:
    """Equation of the degeneracy surface, monic in degrevlex."""
    if not section.lifted:
        B = section.realized.determinant()
        if not B.terms:
            raise DegenerateError("determinant vanishes identically")
        return B.monic()
    gens = fitting_generators(section, 0)
    if not gens:
        raise DegenerateError("maximal minors vanish identically")
    S = saturate_irrelevant(GradedIdeal(gens), seed)
    if len(S.basis) != 1:
        raise DegenerateError(f"saturated Fitting ideal has {len(S.basis)} generators, not principal")
    return S.basis[0]


def is_probably_irreducible(B: HomogeneousPoly, seed: int = 0) -> bool:
    """True when random line restrictions rule out every proper F_p-factor."""
    return not probable_factor_degrees(B, seed)


def corank2_ideal(section: SymmetricSection, seed: int = 0) -> GradedIdeal:
    gens = fitting_generators(section, 1)
    if not gens:
        raise DegenerateError("submaximal minors vanish identically")
    I = saturate_irrelevant(GradedIdeal(gens), seed)
    if krull_dimension(I) > 1:
        raise DegenerateError("corank-2 locus is positive-dimensional")
    return I


def jacobian_ideal(B: HomogeneousPoly, seed: int = 0) -> GradedIdeal:
    """Saturated ideal of the singular scheme (B and its partials)."""
    gens = [B] + [B.derivative(i) for i in range(4)]
    return saturate_irrelevant(GradedIdeal(gens, p=B.p), seed)


@dataclass
class NodalityReport:
    nodal: bool
    dimension: int  # projective dimension of the singular locus (-1 if smooth)
    degree: int | None
    eliminant_degree: int | None
    squarefree: bool | None

    def to_json(self) -> dict:
        return dict(self.__dict__)


def nodality_check(B: HomogeneousPoly, J: GradedIdeal | None = None, seed: int = 0) -> NodalityReport:
    """Only ordinary double points: a finite singular scheme which is reduced."""
    if J is None:
        J = jacobian_ideal(B, seed)
    dim = krull_dimension(J) - 1
    if dim < 0:
        return NodalityReport(True, -1, 0, 0, True)
    if dim > 0:
        return NodalityReport(False, dim, None, None, None)
    rep = squarefree_eliminant(J, seed)
    return NodalityReport(rep["reduced"], 0, rep["ideal_degree"], rep["degree"], rep["squarefree"])


def sing_equals_w(J: GradedIdeal, Iw: GradedIdeal) -> bool:
    return ideal_equal(J, Iw)


# -------------------------------------------------------------- plane contact

@dataclass
class PlaneContact:
    cubic: HomogeneousPoly
    scalar: int
    reduced: bool  # False when the cubic has a repeated component

    def to_json(self) -> dict:
        return {"cubic": self.cubic.to_json(), "scalar": str(self.scalar), "reduced": self.reduced}


def restrict_to_plane(f: HomogeneousPoly, h: HomogeneousPoly) -> tuple[HomogeneousPoly, int]:
    """f on the plane h = 0, written in the three remaining variables."""
    if h.degree != 1 or not h.terms:
        raise ValueError("h must be a nonzero linear form")
    p = f.p
    coeffs = [0] * 4
    for e, c in h.terms.items():
        coeffs[e.index(1)] = c
    v = max(i for i in range(4) if coeffs[i])
    inv = pow(coeffs[v], p - 2, p)
    M = np.eye(4, dtype=np.int64)
    M[v] = [(-coeffs[i] * inv) % p if i != v else 0 for i in range(4)]
    return LinearChange(M, p).apply(f), v


def _sqrt(g: HomogeneousPoly) -> HomogeneousPoly | None:
    """Square root of a monic form in degrevlex, or None."""
    p = g.p
    lm = g.leading_monomial()
    if any(a % 2 for a in lm) or g.degree % 2:
        return None
    S = HomogeneousPoly(p, g.degree // 2, {tuple(a // 2 for a in lm): 1})
    inv2 = pow(2, p - 2, p)
    for _ in range(dim_component(g.degree // 2) + 1):
        r = g - S * S
        if not r.terms:
            return S
        lr = r.leading_monomial()
        ls = S.leading_monomial()
        t = tuple(a - b for a, b in zip(lr, ls))
        if min(t) < 0 or degrevlex_key(t) >= degrevlex_key(ls):
            return None
        S = S + HomogeneousPoly(p, S.degree, {t: r.terms[lr] * inv2 % p})
    return None


def plane_double_contact(B: HomogeneousPoly, h: HomogeneousPoly, seed: int = 0) -> PlaneContact | None:
    """Cubic C with B = c*C^2 on the plane h = 0, if one exists."""
    b, v = restrict_to_plane(B, h)
    if not b.terms:
        return None
    c = b.leading_coefficient()
    C = _sqrt(b.monic())
    if C is None:
        return None
    rng = np.random.default_rng([seed, 0xC0B])
    from .ideals import restrict_to_line

    reduced = False
    for _ in range(6):
        a = [int(t) for t in rng.integers(0, C.p, size=4)]
        q = [int(t) for t in rng.integers(0, C.p, size=4)]
        a[v] = q[v] = 0
        u = restrict_to_line(C, a, q)
        if len(u) - 1 == C.degree and upoly_is_squarefree(u, C.p):
            reduced = True
            break
    return PlaneContact(C, c, reduced)


# ------------------------------------------------------------ presentations

def koszul_presentation(section: SymmetricSection) -> MatrixOfForms:
    """Free presentation of coker of the section over split modules.

    Each Omega(t) copy is presented by its Koszul resolution
    O(t-3)^4 -> O(t-2)^6 -> Omega(t); the lifted columns are lifted through
    the map O(t-2)^6 -> O(t-1)^4.  For split specs this is the matrix itself.
    """
    fr = section.frame
    M = section.realized
    if not fr.blocks:
        return M
    p = section.p
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    triples = list(combinations(range(4), 3))
    omega_rows = {r for _, rows in fr.blocks for r in rows}
    line_rows = [r for r in range(len(fr.row_twists)) if r not in omega_rows]
    row_twists: list[int] = []
    row_of: dict = {}
    for b, (t, _) in enumerate(fr.blocks):
        for q in pairs:
            row_of[(b, q)] = len(row_twists)
            row_twists.append(t - 2)
    for r in line_rows:
        row_of[("line", r)] = len(row_twists)
        row_twists.append(fr.row_twists[r])
    col_twists = list(fr.col_twists)
    extra = []
    for b, (t, _) in enumerate(fr.blocks):
        for tr in triples:
            extra.append((b, tr))
            col_twists.append(t - 3)
    n_rows = len(row_twists)
    entries = [[None] * len(col_twists) for _ in range(n_rows)]
    for j in range(M.shape[1]):
        for r in line_rows:
            entries[row_of[("line", r)]][j] = M.entries[r][j]
        for b, (t, rows) in enumerate(fr.blocks):
            vec = [M.entries[r][j] for r in rows]
            lift = _koszul_lift(vec, p, pairs)
            for q, f in zip(pairs, lift):
                entries[row_of[(b, q)]][j] = f
    for k, (b, tr) in enumerate(extra):
        # e_a ^ e_b ^ e_c -> x_a e_b^e_c - x_b e_a^e_c + x_c e_a^e_b
        a, bb, c = tr
        col = len(fr.col_twists) + k
        for sign, var, q in ((1, a, (bb, c)), (-1, bb, (a, c)), (1, c, (a, bb))):
            e = [0, 0, 0, 0]
            e[var] = 1
            entries[row_of[(b, q)]][col] = HomogeneousPoly(p, 1, {tuple(e): sign})
    return MatrixOfForms(p, row_twists, col_twists, entries)


def _koszul_lift(vec: list[HomogeneousPoly], p: int, pairs) -> list[HomogeneousPoly]:
    """u with sum over pairs u_ij (x_i e_j - x_j e_i) = vec."""
    d = vec[0].degree
    if all(not f.terms for f in vec):
        return [HomogeneousPoly.zero(p, d - 1) for _ in pairs]
    src = _monomials(d - 1)
    n_src, n_dst = len(src), dim_component(d)
    A = np.zeros((4 * n_dst, 6 * n_src), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        for s, m in enumerate(src):
            ei = list(m)
            ei[i] += 1
            ej = list(m)
            ej[j] += 1
            A[j * n_dst + mono_position(tuple(ei)), k * n_src + s] += 1
            A[i * n_dst + mono_position(tuple(ej)), k * n_src + s] -= 1
    b = np.concatenate([f.to_dense() for f in vec])
    sol = solve_mod(A % p, b, p)
    if sol is None:
        raise SpecError("column does not lie in the image of the Koszul map")
    return [HomogeneousPoly.from_dense(p, d - 1, sol[k * n_src:(k + 1) * n_src]) for k in range(len(pairs))]


def presentation_fitting(P: MatrixOfForms, j: int, seed: int = 0) -> GradedIdeal:
    """Saturated Fitt_j of the cokernel of a presentation matrix."""
    size = P.shape[0] - j
    gens = [f for f in P.minors(size) if f.terms]
    return saturate_irrelevant(GradedIdeal(gens, p=P.p), seed)
