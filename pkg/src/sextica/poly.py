"""Prime fields, monomials and homogeneous polynomials in four variables.

Polynomials are sparse maps from exponent tuples to integer coefficients
reduced modulo p.  The monomial order everywhere is degree reverse
lexicographic with x0 > x1 > x2 > x3.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import DegreeError, FieldError

NVARS = 4
DEFAULT_CHAR = 32003
MULTI_PRIMES = (32003, 65537, 1000003)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field F_p for an odd prime p."""

    __slots__ = ("p",)

    def __init__(self, p: int = DEFAULT_CHAR):
        p = int(p)
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(self.p)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)


@lru_cache(maxsize=None)
def check_char(p: int) -> int:
    return PrimeField(p).p


# ---------------------------------------------------------------- monomials

def degrevlex_key(e: tuple[int, ...]) -> tuple[int, ...]:
    """Sort key: a larger key means a larger monomial."""
    return (sum(e), -e[3], -e[2], -e[1])


class Monomial(tuple):
    """Exponent vector ordered by degrevlex."""

    def __new__(cls, exps: Iterable[int]):
        t = tuple(int(a) for a in exps)
        if len(t) != NVARS or min(t) < 0:
            raise ValueError(f"bad exponent vector {t}")
        return super().__new__(cls, t)

    @property
    def degree(self) -> int:
        return sum(self)

    def __lt__(self, other):
        return degrevlex_key(self) < degrevlex_key(other)

    def __gt__(self, other):
        return degrevlex_key(self) > degrevlex_key(other)

    def __le__(self, other):
        return degrevlex_key(self) <= degrevlex_key(other)

    def __ge__(self, other):
        return degrevlex_key(self) >= degrevlex_key(other)

    def divides(self, other: tuple[int, ...]) -> bool:
        return all(a <= b for a, b in zip(self, other))


def mono_mul(a, b) -> tuple[int, ...]:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def mono_divides(a, b) -> bool:
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2] and a[3] <= b[3]


def mono_lcm(a, b) -> tuple[int, ...]:
    return (max(a[0], b[0]), max(a[1], b[1]), max(a[2], b[2]), max(a[3], b[3]))


@lru_cache(maxsize=None)
def _monomials(d: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for e3 in range(d + 1):
        for e2 in range(d - e3 + 1):
            for e1 in range(d - e3 - e2 + 1):
                out.append((d - e1 - e2 - e3, e1, e2, e3))
    return tuple(out)


def graded_component_basis(d: int) -> list[Monomial]:
    """Monomials of degree d, largest first.  Empty for d < 0."""
    if d < 0:
        return []
    return [Monomial(m) for m in _monomials(d)]


def dim_component(d: int) -> int:
    if d < 0:
        return 0
    return (d + 1) * (d + 2) * (d + 3) // 6


@lru_cache(maxsize=None)
def mono_array(d: int) -> np.ndarray:
    """Monomials of degree d as an (N, 4) int64 array in descending order."""
    if d < 0:
        return np.zeros((0, NVARS), dtype=np.int64)
    return np.array(_monomials(d), dtype=np.int64).reshape(-1, NVARS)


@lru_cache(maxsize=None)
def index_table(d: int) -> np.ndarray:
    """Lookup table t[e1, e2, e3] = position of the degree-d monomial."""
    t = np.full((d + 1, d + 1, d + 1), -1, dtype=np.int64)
    m = mono_array(d)
    t[m[:, 1], m[:, 2], m[:, 3]] = np.arange(len(m))
    return t


def mono_index(d: int, exps: np.ndarray) -> np.ndarray:
    """Positions of an (k, 4) array of degree-d exponent vectors."""
    t = index_table(d)
    return t[exps[:, 1], exps[:, 2], exps[:, 3]]


@lru_cache(maxsize=None)
def _index_dict(d: int) -> dict:
    return {m: i for i, m in enumerate(_monomials(d))}


def mono_position(e: tuple[int, ...]) -> int:
    return _index_dict(sum(e))[tuple(e)]


@lru_cache(maxsize=256)
def product_table(a: int, b: int) -> np.ndarray:
    """P[i, j] = index in degree a+b of mono_i(a) * mono_j(b)."""
    ma, mb = mono_array(a), mono_array(b)
    s = ma[:, None, :] + mb[None, :, :]
    t = index_table(a + b)
    return t[s[..., 1], s[..., 2], s[..., 3]]


# -------------------------------------------------------------- polynomials

class HomogeneousPoly:
    """A homogeneous polynomial over F_p in x0..x3.

    ``terms`` maps exponent tuples to coefficients in [1, p).  The zero
    polynomial has an empty map but still carries its degree.
    """

    __slots__ = ("p", "degree", "terms")

    def __init__(self, p: int, degree: int, terms: Mapping | None = None, *, _trusted=False):
        self.p = p if _trusted else check_char(p)
        self.degree = int(degree)
        if _trusted:
            self.terms = terms if terms is not None else {}
            return
        clean: dict[tuple[int, ...], int] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != NVARS or min(e) < 0:
                raise ValueError(f"bad exponent vector {e}")
            if sum(e) != self.degree:
                raise DegreeError(f"term {e} has degree {sum(e)}, expected {self.degree}")
            c = int(c) % self.p
            if c:
                clean[e] = (clean.get(e, 0) + c) % self.p
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, p: int, degree: int) -> "HomogeneousPoly":
        return cls(p, degree, {}, _trusted=True)

    @classmethod
    def monomial(cls, p: int, exps, coeff: int = 1) -> "HomogeneousPoly":
        e = tuple(exps)
        return cls(p, sum(e), {e: coeff})

    @classmethod
    def variable(cls, p: int, i: int) -> "HomogeneousPoly":
        e = [0] * NVARS
        e[i] = 1
        return cls(p, 1, {tuple(e): 1}, _trusted=True)

    @classmethod
    def linear(cls, p: int, coeffs) -> "HomogeneousPoly":
        t = {}
        for i, c in enumerate(coeffs):
            e = [0] * NVARS
            e[i] = 1
            t[tuple(e)] = c
        return cls(p, 1, t)

    @classmethod
    def random(cls, p: int, degree: int, rng: np.random.Generator) -> "HomogeneousPoly":
        """Uniform element of the degree-d component."""
        if degree < 0:
            return cls.zero(p, degree)
        mons = _monomials(degree)
        cs = rng.integers(0, p, size=len(mons))
        return cls(p, degree, {m: int(c) for m, c in zip(mons, cs) if c}, _trusted=True)

    @classmethod
    def from_dense(cls, p: int, degree: int, vec) -> "HomogeneousPoly":
        mons = _monomials(degree)
        return cls(p, degree, {mons[i]: int(c) for i, c in enumerate(vec) if c % p}, _trusted=True)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __repr__(self) -> str:
        return f"HomogeneousPoly(p={self.p}, deg={self.degree}, {self.to_str()})"

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in self.sorted_monomials():
            c = self.terms[e]
            mon = "*".join(f"x{i}^{a}" if a > 1 else f"x{i}" for i, a in enumerate(e) if a)
            parts.append(f"{c}*{mon}" if mon else str(c))
        return " + ".join(parts)

    def sorted_monomials(self) -> list[tuple[int, ...]]:
        return sorted(self.terms, key=degrevlex_key, reverse=True)

    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=degrevlex_key)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.p != other.p:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.p, self.degree, frozenset(self.terms.items())))

    # arithmetic
    def _check(self, other: "HomogeneousPoly") -> None:
        if self.p != other.p:
            raise FieldError(f"characteristics differ: {self.p} vs {other.p}")

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.degree != other.degree:
            raise DegreeError(f"cannot add degree {self.degree} and {other.degree}")
        p = self.p
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = (t.get(e, 0) + c) % p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return HomogeneousPoly(p, self.degree, t, _trusted=True)

    def __neg__(self) -> "HomogeneousPoly":
        p = self.p
        return HomogeneousPoly(p, self.degree, {e: p - c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        return self + (-other)

    def scale(self, c: int) -> "HomogeneousPoly":
        p = self.p
        c %= p
        if c == 0:
            return HomogeneousPoly.zero(p, self.degree)
        return HomogeneousPoly(p, self.degree, {e: v * c % p for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.p
        deg = self.degree + other.degree
        if not self.terms or not other.terms:
            return HomogeneousPoly.zero(p, deg)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                t[e] = t.get(e, 0) + c1 * c2
        t = {e: c % p for e, c in t.items() if c % p}
        return HomogeneousPoly(p, deg, t, _trusted=True)

    __rmul__ = __mul__

    def mul_monomial(self, m, c: int = 1) -> "HomogeneousPoly":
        p = self.p
        return HomogeneousPoly(
            p,
            self.degree + sum(m),
            {mono_mul(e, m): v * c % p for e, v in self.terms.items()},
            _trusted=True,
        )

    def monic(self) -> "HomogeneousPoly":
        if not self.terms:
            return self
        return self.scale(pow(self.leading_coefficient(), self.p - 2, self.p))

    def derivative(self, i: int) -> "HomogeneousPoly":
        p = self.p
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                v = c * e[i] % p
                if v:
                    f = list(e)
                    f[i] -= 1
                    t[tuple(f)] = v
        return HomogeneousPoly(p, self.degree - 1, t, _trusted=True)

    def evaluate(self, point) -> int:
        p = self.p
        x = [int(a) % p for a in point]
        s = 0
        for e, c in self.terms.items():
            s += c * pow(x[0], e[0], p) * pow(x[1], e[1], p) * pow(x[2], e[2], p) * pow(x[3], e[3], p)
        return s % p

    def to_dense(self) -> np.ndarray:
        v = np.zeros(dim_component(self.degree), dtype=np.int64)
        if self.terms:
            idx = _index_dict(self.degree)
            for e, c in self.terms.items():
                v[idx[e]] = c
        return v

    def max_power_of(self, i: int) -> int:
        """Largest k such that x_i^k divides self."""
        if not self.terms:
            return 0
        return min(e[i] for e in self.terms)

    def divide_monomial(self, m) -> "HomogeneousPoly":
        t = {}
        for e, c in self.terms.items():
            f = (e[0] - m[0], e[1] - m[1], e[2] - m[2], e[3] - m[3])
            if min(f) < 0:
                raise ValueError("monomial does not divide polynomial")
            t[f] = c
        return HomogeneousPoly(self.p, self.degree - sum(m), t, _trusted=True)

    def exact_divide(self, g: "HomogeneousPoly") -> "HomogeneousPoly":
        """Quotient q with self == q * g; raises ValueError if not exact."""
        self._check(g)
        if not g.terms:
            raise ZeroDivisionError("division by zero polynomial")
        p = self.p
        lm = g.leading_monomial()
        inv = pow(g.terms[lm], p - 2, p)
        r = dict(self.terms)
        q: dict = {}
        gt = list(g.terms.items())
        key = degrevlex_key
        while r:
            e = max(r, key=key)
            c = r[e]
            f = (e[0] - lm[0], e[1] - lm[1], e[2] - lm[2], e[3] - lm[3])
            if min(f) < 0:
                raise ValueError("division is not exact")
            a = c * inv % p
            q[f] = a
            for ge, gc in gt:
                h = (ge[0] + f[0], ge[1] + f[1], ge[2] + f[2], ge[3] + f[3])
                v = (r.get(h, 0) - a * gc) % p
                if v:
                    r[h] = v
                else:
                    r.pop(h, None)
        return HomogeneousPoly(p, self.degree - g.degree, q, _trusted=True)

    def substitute_linear(self, M) -> "HomogeneousPoly":
        """Return f(M x), i.e. x_i is replaced by sum_j M[i][j] x_j."""
        p = self.p
        d = self.degree
        if not self.terms:
            return self
        T = LinearChange(M, p).component_matrix(d)
        v = (T @ self.to_dense()) % p
        return HomogeneousPoly.from_dense(p, d, v)

    # wire format
    def to_json(self) -> dict:
        return {
            "char": self.p,
            "degree": self.degree,
            "terms": [{"exponents": list(e), "coeff": str(self.terms[e])} for e in self.sorted_monomials()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "HomogeneousPoly":
        p = int(obj["char"])
        return cls(p, int(obj["degree"]), {tuple(t["exponents"]): int(t["coeff"]) for t in obj["terms"]})


def poly_mul(a: HomogeneousPoly, b: HomogeneousPoly) -> HomogeneousPoly:
    return a * b


def x(p: int, i: int) -> HomogeneousPoly:
    return HomogeneousPoly.variable(p, i)


def parse_poly(text: str, p: int) -> HomogeneousPoly:
    """Parse a homogeneous expression such as ``3*x0^2*x1 - x2^3``."""
    s = text.replace(" ", "").replace("**", "^").replace("-", "+-")
    terms: dict = {}
    degree = None
    for chunk in s.split("+"):
        if not chunk:
            continue
        sign = 1
        while chunk.startswith("-"):
            sign, chunk = -sign, chunk[1:]
        coeff = sign
        e = [0, 0, 0, 0]
        for factor in chunk.split("*"):
            if not factor:
                continue
            if factor.startswith("x"):
                name, _, power = factor.partition("^")
                e[int(name[1:])] += int(power) if power else 1
            else:
                coeff *= int(factor)
        d = sum(e)
        if degree is None:
            degree = d
        elif d != degree:
            raise DegreeError(f"expression {text!r} is not homogeneous")
        t = tuple(e)
        terms[t] = terms.get(t, 0) + coeff
    if degree is None:
        raise ValueError("empty expression")
    return HomogeneousPoly(p, degree, terms)


class LinearChange:
    """A linear substitution x -> M x with cached action on each component."""

    def __init__(self, M, p: int):
        self.p = p
        self.M = np.array(M, dtype=np.int64) % p
        self._cache: dict[int, np.ndarray] = {}

    def component_matrix(self, d: int) -> np.ndarray:
        """Matrix of f -> f(Mx) on dense coefficient vectors of degree d."""
        if d in self._cache:
            return self._cache[d]
        p = self.p
        if d == 0:
            T = np.ones((1, 1), dtype=np.int64)
        else:
            prev = self.component_matrix(d - 1)
            mons = mono_array(d)
            n_new, n_old = dim_component(d), dim_component(d - 1)
            # peel the first variable present in each monomial
            first = np.argmax(mons > 0, axis=1)
            peeled = mons.copy()
            peeled[np.arange(n_new), first] -= 1
            src = mono_index(d - 1, peeled)
            T = np.zeros((n_new, n_new), dtype=np.int64)
            up = product_table(1, d - 1)  # up[j, r] = index of x_j * mono_r
            cols = prev[:, src]  # (n_old, n_new) images of the peeled monomials
            for j in range(NVARS):
                coef = self.M[first, j]  # coefficient of x_j in the substituted variable
                contrib = (cols * coef[None, :]) % p
                np.add.at(T, up[j], contrib)
            T %= p
        self._cache[d] = T
        return T

    def apply(self, f: HomogeneousPoly) -> HomogeneousPoly:
        if not f.terms:
            return f
        v = (self.component_matrix(f.degree) @ f.to_dense()) % self.p
        return HomogeneousPoly.from_dense(self.p, f.degree, v)


def random_invertible(p: int, rng: np.random.Generator, n: int = NVARS) -> np.ndarray:
    from .linalg import rank_mod

    while True:
        M = rng.integers(0, p, size=(n, n)).astype(np.int64)
        if rank_mod(M, p) == n:
            return M


def inverse_mod(M, p: int) -> np.ndarray:
    from .linalg import inverse_mod as _inv

    return _inv(np.asarray(M, dtype=np.int64), p)
