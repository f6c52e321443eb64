"""Homogeneous ideals of F_p[x0..x3]: bases, Hilbert data, saturation."""

from __future__ import annotations

from functools import cached_property
from math import factorial
from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionError, FieldError, ResourceError
from .groebner import DEFAULT_DEGREE_CAP, NormalForm, reduced_groebner_basis
from .linalg import (
    distinct_degree_pattern,
    inverse_mod,
    matmul_mod,
    minimal_polynomial,
    solve_mod,
    upoly_gcd,
    upoly_is_squarefree,
)
from .poly import (
    HomogeneousPoly,
    LinearChange,
    NVARS,
    check_char,
    dim_component,
    mono_array,
    mono_index,
    random_invertible,
)

SATURATION_ATTEMPTS = 5
ELIMINANT_ATTEMPTS = 5


class GradedIdeal:
    """Ideal generated by homogeneous polynomials; the basis is computed lazily."""

    def __init__(self, generators: Iterable[HomogeneousPoly], p: int | None = None, saturated: bool = False,
                 degree_cap: int = DEFAULT_DEGREE_CAP):
        gens = [g for g in generators]
        if p is None:
            if not gens:
                raise FieldError("characteristic required for an ideal without generators")
            p = gens[0].p
        self.p = check_char(p)
        for g in gens:
            if g.p != self.p:
                raise FieldError(f"generator over F_{g.p} in an ideal over F_{self.p}")
        self.generators = [g for g in gens if g.terms]
        self.saturated = saturated
        self.degree_cap = degree_cap

    def __repr__(self) -> str:
        return f"GradedIdeal(p={self.p}, {len(self.generators)} generators)"

    @cached_property
    def basis(self) -> list[HomogeneousPoly]:
        return reduced_groebner_basis(self.generators, self.degree_cap)

    @cached_property
    def _nf(self) -> NormalForm:
        return NormalForm(self.basis, self.p)

    @cached_property
    def leading_monomials(self) -> list[tuple]:
        return minimalize([g.leading_monomial() for g in self.basis])

    def normal_form(self, f: HomogeneousPoly) -> HomogeneousPoly:
        return self._nf.reduce(f)

    def contains(self, f: HomogeneousPoly) -> bool:
        return not self.normal_form(f).terms

    def is_subset_of(self, other: "GradedIdeal") -> bool:
        return all(other.contains(g) for g in self.basis)

    def max_basis_degree(self) -> int:
        return max((g.degree for g in self.basis), default=0)

    def to_json(self) -> dict:
        return {
            "char": self.p,
            "generators": [g.to_json() for g in self.basis],
            "saturated": self.saturated,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "GradedIdeal":
        p = int(obj["char"])
        gens = [HomogeneousPoly.from_json(g) for g in obj["generators"]]
        return cls(gens, p=p, saturated=bool(obj.get("saturated", False)))


def groebner(I: GradedIdeal) -> list[HomogeneousPoly]:
    return I.basis


# ------------------------------------------------------------- monomial data

def minimalize(lms: Iterable[tuple]) -> list[tuple]:
    lms = sorted(set(tuple(m) for m in lms), key=sum)
    out: list[tuple] = []
    for m in lms:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def monomial_hilbert_function(lms: list[tuple], n: int) -> int:
    """Number of degree-n monomials outside the monomial ideal."""
    if n < 0:
        return 0
    mons = mono_array(n)
    inside = np.zeros(len(mons), dtype=bool)
    for m in lms:
        if sum(m) <= n:
            inside |= np.all(mons >= np.array(m, dtype=np.int64), axis=1)
    return int(len(mons) - inside.sum())


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def hilbert_numerator(lms: list[tuple]) -> list[int]:
    """K(t) with HS(R/M) = K(t) / (1-t)^4, by pivot recursion on the monomial ideal."""
    return _numer(tuple(sorted(minimalize(lms))), {})


def _numer(gens: tuple, memo: dict) -> list[int]:
    if gens in memo:
        return memo[gens]
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    # split off generators that share no variable with the rest
    support = [frozenset(i for i in range(NVARS) if g[i]) for g in gens]
    for k, g in enumerate(gens):
        if all(not (support[k] & support[j]) for j in range(len(gens)) if j != k):
            rest = gens[:k] + gens[k + 1:]
            res = _pmul(_numer(rest, memo), [1] + [0] * (sum(g) - 1) + [-1])
            memo[gens] = res
            return res
    # pivot on the variable used most often, at the median positive exponent
    # the pivot must avoid the ideal, so read it off non-pure generators
    mixed = [g for g in gens if sum(1 for a in g if a) > 1]
    counts = [sum(1 for g in mixed if g[i]) for i in range(NVARS)]
    v = int(np.argmax(counts))
    exps = sorted(g[v] for g in mixed if g[v])
    e = exps[len(exps) // 2]
    piv = tuple(e if i == v else 0 for i in range(NVARS))
    plus = tuple(sorted(minimalize(list(gens) + [piv])))
    colon = tuple(sorted(minimalize(
        tuple(max(a - b, 0) for a, b in zip(g, piv)) for g in gens
    )))
    res = _padd(_numer(plus, memo), [0] * e + _numer(colon, memo))
    memo[gens] = res
    return res


def hilbert_polynomial_data(lms: list[tuple]) -> tuple[int, int, list[int]]:
    """(krull dimension, degree, reduced numerator) of R/M."""
    K = hilbert_numerator(lms)
    dim = NVARS
    while dim > 0 and sum(K) == 0:
        # divide by (1 - t)
        q, acc = [], 0
        for c in K[:-1]:
            acc += c
            q.append(acc)
        K = q
        dim -= 1
    while K and K[-1] == 0:
        K.pop()
    return dim, sum(K), K


def hilbert_polynomial_values(lms: list[tuple], ns: Iterable[int]) -> list[int]:
    dim, _, K = hilbert_polynomial_data(lms)
    out = []
    for n in ns:
        if dim == 0:
            out.append(0)
            continue
        out.append(sum(c * _binom(n - k + dim - 1, dim - 1) for k, c in enumerate(K)))
    return out


def _binom(x: int, r: int) -> int:
    """Binomial coefficient as a polynomial in x (valid for negative x)."""
    num = 1
    for i in range(r):
        num *= x - i
    return num // factorial(r)


# ------------------------------------------------------------ ideal invariants

def hilbert_function(I: GradedIdeal, n: int) -> int:
    """dim_k (R/I)_n."""
    return monomial_hilbert_function(I.leading_monomials, n)


def krull_dimension(I: GradedIdeal) -> int:
    """Krull dimension of R/I (a finite point set has Krull dimension 1)."""
    return hilbert_polynomial_data(I.leading_monomials)[0]


def projective_dimension(I: GradedIdeal) -> int:
    """Dimension of the zero set in P^3; -1 when empty."""
    return krull_dimension(I) - 1


def ideal_degree(I: GradedIdeal) -> int:
    """Number of points with multiplicity; 0 for an empty zero set."""
    dim, deg, _ = hilbert_polynomial_data(I.leading_monomials)
    if dim == 0:
        return 0
    if dim > 1:
        raise DimensionError(f"zero set has dimension {dim - 1}, degree of points undefined")
    return deg


def hilbert_polynomial(I: GradedIdeal) -> tuple[int, list[int]]:
    """(Krull dimension, values of the Hilbert polynomial at 0..dim-1)."""
    lms = I.leading_monomials
    dim = hilbert_polynomial_data(lms)[0]
    return dim, hilbert_polynomial_values(lms, range(dim))


def ideal_equal(I: GradedIdeal, J: GradedIdeal) -> bool:
    if I.p != J.p:
        raise FieldError("ideals over different fields")
    return [g.terms for g in I.basis] == [g.terms for g in J.basis]


def regularity_index(I: GradedIdeal) -> int:
    """Least n with HF(n) equal to the degree, for a finite point set."""
    deg = ideal_degree(I)
    n = 0
    while hilbert_function(I, n) != deg:
        n += 1
        if n > I.degree_cap:
            raise ResourceError("Hilbert function does not stabilize below the degree cap")
    return n


# ----------------------------------------------------------------- saturation

def _coordinate_change(p: int, rng: np.random.Generator):
    M = random_invertible(p, rng)
    return LinearChange(M, p), LinearChange(inverse_mod(M, p), p)


def saturate_irrelevant(I: GradedIdeal, seed: int = 0) -> GradedIdeal:
    """I : (x0,..,x3)^infinity, certified by equality of Hilbert polynomials."""
    if I.saturated:
        return I
    p = I.p
    if not I.generators:
        return GradedIdeal([], p=p, saturated=True)
    target = hilbert_polynomial(I)
    rng = np.random.default_rng([seed, 0x5A7])
    for _ in range(SATURATION_ATTEMPTS):
        fwd, back = _coordinate_change(p, rng)
        moved = GradedIdeal([fwd.apply(g) for g in I.generators], p=p, degree_cap=I.degree_cap)
        cand = []
        for g in moved.basis:
            k = g.max_power_of(3)
            cand.append(g.divide_monomial((0, 0, 0, k)) if k else g)
        S = GradedIdeal([back.apply(g) for g in cand], p=p, degree_cap=I.degree_cap)
        if hilbert_polynomial(S) == target or _is_unit(S):
            S.saturated = True
            return S
    raise ResourceError("saturation could not be certified after repeated coordinate changes")


def _is_unit(I: GradedIdeal) -> bool:
    return any(g.degree == 0 for g in I.basis)


# ------------------------------------------------------------------ eliminant

def squarefree_eliminant(I: GradedIdeal, seed: int = 0) -> dict:
    """Minimal polynomial of a generic coordinate function on a finite scheme.

    Returns a dict with the eliminant coefficients (lowest degree first),
    its degree, whether it is squarefree, and ``reduced`` which holds
    exactly when it is squarefree of degree equal to the ideal degree.
    """
    p = I.p
    S = saturate_irrelevant(I, seed)
    deg = ideal_degree(S)
    if deg == 0:
        return {"eliminant": [1], "degree": 0, "ideal_degree": 0, "squarefree": True, "reduced": True}
    rng = np.random.default_rng([seed, 0xE11])
    last = None
    for _ in range(ELIMINANT_ATTEMPTS):
        fwd, _back = _coordinate_change(p, rng)
        J = GradedIdeal([fwd.apply(g) for g in S.basis], p=p, degree_cap=S.degree_cap)
        n = max(regularity_index(J), J.max_basis_degree())
        nf = J._nf
        std_n = nf.standard_positions(n)
        std_n1 = nf.standard_positions(n + 1)
        if len(std_n) != deg or len(std_n1) != deg:
            continue
        up = mono_array(n)[std_n]
        mats = []
        for v in (2, 3):
            shift = np.zeros(NVARS, dtype=np.int64)
            shift[v] = 1
            R = np.zeros((deg, dim_component(n + 1)), dtype=np.int64)
            R[np.arange(deg), mono_index(n + 1, up + shift)] = 1
            R = nf.reduce_dense(n + 1, R)
            mats.append(R[:, std_n1].T)  # columns are images of standard monomials
        X2, X3 = mats
        try:
            X3inv = inverse_mod(X3, p)
        except ZeroDivisionError:
            continue
        M = matmul_mod(X3inv, X2, p)
        e = minimal_polynomial(M, p, rng)
        sqf = upoly_is_squarefree(e, p)
        last = {"eliminant": e, "degree": len(e) - 1, "ideal_degree": deg, "squarefree": sqf,
                "reduced": sqf and len(e) - 1 == deg}
        if last["reduced"]:
            return last
    if last is None:
        raise ResourceError("no admissible coordinate change found for the eliminant")
    return last


def restrict_to_line(f: HomogeneousPoly, a, b) -> list[int]:
    """Univariate f(s*a + b) as coefficients, lowest first (affine chart t=1)."""
    p = f.p
    d = f.degree
    out = [0] * (d + 1)
    # expand product of (a_i s + b_i)^{e_i}
    cache: dict = {}

    def powlin(i, k):
        key = (i, k)
        if key not in cache:
            poly = [1]
            for _ in range(k):
                poly = [(x1 + x2) % p for x1, x2 in zip(
                    [c * b[i] for c in poly] + [0], [0] + [c * a[i] for c in poly])]
            cache[key] = poly
        return cache[key]

    for e, c in f.terms.items():
        poly = [c]
        for i in range(NVARS):
            if e[i]:
                q = powlin(i, e[i])
                poly = [sum(poly[j] * q[k - j] for j in range(len(poly)) if 0 <= k - j < len(q)) % p
                        for k in range(len(poly) + len(q) - 1)]
        for k, v in enumerate(poly):
            out[k] = (out[k] + v) % p
    return out


def probable_factor_degrees(f: HomogeneousPoly, seed: int = 0, lines: int = 8) -> set[int]:
    """Degrees k in (0, deg f) for which an F_p-factor of degree k is still possible.

    Each random line restriction factors into irreducibles; a factor of f of
    degree k forces a subset of those degrees summing to k.  An empty result
    certifies that f has no proper factor over F_p.
    """
    p = f.p
    d = f.degree
    possible = set(range(1, d))
    rng = np.random.default_rng([seed, 0xFAC])
    used = 0
    tries = 0
    while used < lines and possible and tries < 10 * lines:
        tries += 1
        a = [int(v) for v in rng.integers(0, p, size=NVARS)]
        b = [int(v) for v in rng.integers(0, p, size=NVARS)]
        u = restrict_to_line(f, a, b)
        if len(u) - 1 != d or u[-1] == 0 or not upoly_is_squarefree(u, p):
            continue
        used += 1
        degs = distinct_degree_pattern(u, p)
        sums = {0}
        for k in degs:
            sums |= {s + k for s in sums}
        possible &= sums
    return possible
