"""Bundle bookkeeping on P^3: specs, Bott numbers, tensor tables, enumeration.

A spec is a direct sum of twisted cotangent bundles Omega(t) and line
bundles O(t).  Cohomology of every tensor expression is computed from
explicit Koszul/Euler complexes of split bundles, one per indecomposable
piece ("atom") of the expression.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb
from typing import Mapping

from .complexes import SplitComplex, hypercohomology, line_cohomology
from .errors import SpecError
from .matrix import MatrixOfForms
from .poly import DEFAULT_CHAR, HomogeneousPoly


@dataclass(frozen=True)
class BundleSpec:
    """E = sum of Omega(t)^mult over omega, plus sum of O(t)^mult over line."""

    delta: int
    omega: tuple[tuple[int, int], ...] = ()
    line: tuple[tuple[int, int], ...] = ()

    @classmethod
    def make(cls, delta: int, omega=(), line: Mapping[int, int] | None = None) -> "BundleSpec":
        om = Counter()
        for t, m in omega:
            if m:
                om[int(t)] += int(m)
        ln = Counter()
        for t, m in (line or {}).items():
            if m:
                ln[int(t)] += int(m)
        if int(delta) not in (0, 1):
            raise SpecError("delta must be 0 or 1")
        return cls(int(delta), tuple(sorted(om.items(), reverse=True)), tuple(sorted(ln.items(), reverse=True)))

    @classmethod
    def from_json(cls, obj: Mapping) -> "BundleSpec":
        return cls.make(
            obj["delta"],
            [tuple(x) for x in obj.get("omega", [])],
            {int(k): int(v) for k, v in obj.get("line", {}).items()},
        )

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "omega": [[t, m] for t, m in self.omega],
            "line": {str(t): m for t, m in self.line},
        }

    @property
    def rank(self) -> int:
        return 3 * sum(m for _, m in self.omega) + sum(m for _, m in self.line)

    @property
    def c1(self) -> int:
        return sum(m * (3 * t - 4) for t, m in self.omega) + sum(m * t for t, m in self.line)

    @property
    def line_twists(self) -> list[int]:
        """Line summand twists, largest first, repeated by multiplicity."""
        return [t for t, m in self.line for _ in range(m)]

    @property
    def omega_twists(self) -> list[int]:
        return [t for t, m in self.omega for _ in range(m)]

    def shape_dims(self) -> tuple[int, int, int, int] | None:
        """(k, m2, m3, m4) when E = Omega(-2)^k + O(-2)^m2 + O(-3)^m3 + O(-4)^m4."""
        if any(t != -2 for t, _ in self.omega) or any(t not in (-2, -3, -4) for t, _ in self.line):
            return None
        ln = dict(self.line)
        k = sum(m for _, m in self.omega)
        return k, ln.get(-2, 0), ln.get(-3, 0), ln.get(-4, 0)

    @classmethod
    def from_shape(cls, k: int, m2: int, m3: int, m4: int, delta: int = 1) -> "BundleSpec":
        return cls.make(delta, [(-2, k)] if k else [], {-2: m2, -3: m3, -4: m4})

    def label(self) -> str:
        parts = [f"Ω¹({t})^{m}" if m > 1 else f"Ω¹({t})" for t, m in self.omega]
        parts += [f"O({t})^{m}" if m > 1 else f"O({t})" for t, m in self.line]
        return " ⊕ ".join(parts) or "0"


@dataclass
class Validation:
    accepted: bool
    reason: str


def spec_validate(spec: BundleSpec) -> Validation:
    value = 2 * spec.c1 + spec.rank * (6 + spec.delta)
    if spec.rank == 0:
        return Validation(False, "empty bundle")
    if value != 6:
        return Validation(False, f"2*c1 + rank*(6+delta) = {value}, expected 6")
    return Validation(True, "2*c1 + rank*(6+delta) = 6")


# ------------------------------------------------------------------ atoms

def _lin(p: int, i: int, c: int = 1) -> HomogeneousPoly:
    e = [0, 0, 0, 0]
    e[i] = 1
    return HomogeneousPoly(p, 1, {tuple(e): c})


def _pairs(sym: bool) -> list[tuple[int, int]]:
    return [(i, j) for i in range(4) for j in range(i if sym else i + 1, 4)]


def _mat(p: int, rows: list[int], cols: list[int], fill) -> MatrixOfForms:
    entries = [[None] * len(cols) for _ in rows]
    for (r, c), f in fill.items():
        entries[r][c] = f
    return MatrixOfForms(p, rows, cols, entries)


def atom_complex(kind: str, t: int, p: int = DEFAULT_CHAR) -> SplitComplex:
    """Split complex quasi-isomorphic to the atom placed at position 0."""
    if kind == "O":
        return SplitComplex(p, {0: [t]})
    if kind == "Omega":
        d = _mat(p, [t], [t - 1] * 4, {(0, i): _lin(p, i) for i in range(4)})
        return SplitComplex(p, {0: [t - 1] * 4, 1: [t]}, {0: d})
    if kind == "T":
        d = _mat(p, [t + 1] * 4, [t], {(i, 0): _lin(p, i) for i in range(4)})
        return SplitComplex(p, {-1: [t], 0: [t + 1] * 4}, {-1: d})
    if kind == "S2Omega":
        pr = _pairs(True)
        fill = {}
        for c, (i, j) in enumerate(pr):
            if i == j:
                fill[(i, c)] = _lin(p, i, 2)
            else:
                fill[(j, c)] = _lin(p, i)
                fill[(i, c)] = _lin(p, j)
        d = _mat(p, [t - 1] * 4, [t - 2] * 10, fill)
        return SplitComplex(p, {0: [t - 2] * 10, 1: [t - 1] * 4}, {0: d})
    if kind == "L2Omega":
        pr = _pairs(False)
        fill = {}
        for c, (i, j) in enumerate(pr):
            fill[(i, c)] = _lin(p, j)
            fill[(j, c)] = _lin(p, i, -1)
        d0 = _mat(p, [t - 1] * 4, [t - 2] * 6, fill)
        d1 = _mat(p, [t], [t - 1] * 4, {(0, i): _lin(p, i) for i in range(4)})
        return SplitComplex(p, {0: [t - 2] * 6, 1: [t - 1] * 4, 2: [t]}, {0: d0, 1: d1})
    if kind == "S2T":
        pr = _pairs(True)
        idx = {q: n for n, q in enumerate(pr)}
        fill = {}
        for i in range(4):
            for j in range(4):
                fill[(idx[(min(i, j), max(i, j))], i)] = _lin(p, j)
        d = _mat(p, [t + 2] * 10, [t + 1] * 4, fill)
        return SplitComplex(p, {-1: [t + 1] * 4, 0: [t + 2] * 10}, {-1: d})
    if kind == "L2T":
        pr = _pairs(False)
        idx = {q: n for n, q in enumerate(pr)}
        d0 = _mat(p, [t + 1] * 4, [t], {(i, 0): _lin(p, i) for i in range(4)})
        fill = {}
        for i in range(4):
            for j in range(4):
                if j < i:
                    fill[(idx[(j, i)], i)] = _lin(p, j)
                elif j > i:
                    fill[(idx[(i, j)], i)] = _lin(p, j, -1)
        d1 = _mat(p, [t + 2] * 6, [t + 1] * 4, fill)
        return SplitComplex(p, {-2: [t], -1: [t + 1] * 4, 0: [t + 2] * 6}, {-2: d0, -1: d1})
    if kind == "OmegaT":
        # Omega(t) ⊗ T as the tensor product of the two Euler complexes
        mid = [t] * 17  # V^∨⊗V (index 4a+b) then the O summand
        fill0 = {(16, a): _lin(p, a) for a in range(4)}
        for a in range(4):
            for b in range(4):
                fill0[(4 * a + b, a)] = _lin(p, b)
        d0 = _mat(p, mid, [t - 1] * 4, fill0)
        fill1 = {}
        for a in range(4):
            for b in range(4):
                fill1[(b, 4 * a + b)] = _lin(p, a)
        for b in range(4):
            fill1[(b, 16)] = _lin(p, b, -1)
        d1 = _mat(p, [t + 1] * 4, mid, fill1)
        return SplitComplex(p, {-1: [t - 1] * 4, 0: mid, 1: [t + 1] * 4}, {-1: d0, 0: d1})
    raise SpecError(f"unknown atom {kind}")


ATOM_RANK = {"O": 1, "Omega": 3, "T": 3, "S2Omega": 6, "L2Omega": 3, "S2T": 6, "L2T": 3, "OmegaT": 9}


@lru_cache(maxsize=None)
def atom_cohomology(kind: str, t: int) -> tuple[int, int, int, int]:
    if kind == "O":
        return tuple(line_cohomology(t))
    return tuple(hypercohomology(atom_complex(kind, t)))


def atom_euler(kind: str, t: int) -> int:
    """Euler characteristic from the terms of the atom complex alone."""
    C = atom_complex(kind, t)
    total = 0
    for pos, twists in C.terms.items():
        for s in twists:
            total += (-1) ** pos * _chi_line(s)
    return total


def _chi_line(s: int) -> int:
    # chi(O(s)) = (s+1)(s+2)(s+3)/6 for every integer s
    return (s + 1) * (s + 2) * (s + 3) // 6


def bott_cohomology(summand: tuple[str, int], i: int) -> int:
    """h^i of O(n) or Omega(n) on P^3, summand given as ("O", n) or ("Omega", n)."""
    kind, n = summand
    if kind not in ("O", "Omega"):
        raise SpecError("only O(n) and Omega(n) summands are supported")
    return atom_cohomology(kind, int(n))[i]


# ------------------------------------------------------ tensor expressions

@dataclass
class CohomologyTable:
    expression: str
    dims: list[int]
    atoms: dict = field(default_factory=dict)

    @property
    def euler(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))

    def to_json(self) -> dict:
        return {"expression": self.expression, "h": self.dims}


def _summands(spec: BundleSpec, dual: bool) -> list[tuple[str, int, int]]:
    """(kind, twist, multiplicity) of E or of its dual."""
    out = []
    for t, m in spec.omega:
        out.append(("T", -t, m) if dual else ("Omega", t, m))
    for t, m in spec.line:
        out.append(("O", -t, m) if dual else ("O", t, m))
    return out


def _square(kind: str, sym: bool) -> list[str]:
    """Atoms of S^2 (sym) or Λ^2 of a single copy of an atom; twists double."""
    table = {
        ("O", True): ["O"], ("O", False): [],
        ("Omega", True): ["S2Omega"], ("Omega", False): ["L2Omega"],
        ("T", True): ["S2T"], ("T", False): ["L2T"],
    }
    return table[(kind, sym)]


def _product(k1: str, k2: str) -> list[str]:
    if k1 == "O":
        return [k2]
    if k2 == "O":
        return [k1]
    pair = tuple(sorted((k1, k2)))
    if pair == ("Omega", "Omega"):
        return ["S2Omega", "L2Omega"]
    if pair == ("T", "T"):
        return ["S2T", "L2T"]
    if pair == ("Omega", "T"):
        return ["OmegaT"]
    raise SpecError(f"no decomposition for {k1} ⊗ {k2}")


def expression_atoms(spec: BundleSpec, expr: str, m: int) -> Counter:
    """Atom multiset of E(m), E^∨(m), S²E(m), Λ²E^∨(m) or sl(E)(m)."""
    out: Counter = Counter()
    if expr in ("E", "Edual"):
        for kind, t, mult in _summands(spec, expr == "Edual"):
            out[(kind, t + m)] += mult
        return out
    if expr in ("S2E", "L2Edual"):
        sym = expr == "S2E"
        parts = _summands(spec, dual=not sym)
        for a, (k1, t1, m1) in enumerate(parts):
            # S^2(U⊗A) = S²U⊗S²A ⊕ Λ²U⊗Λ²A and Λ^2(U⊗A) = S²U⊗Λ²A ⊕ Λ²U⊗S²A
            for kind in _square(k1, sym):
                out[(kind, 2 * t1 + m)] += comb(m1 + 1, 2)
            for kind in _square(k1, not sym):
                out[(kind, 2 * t1 + m)] += comb(m1, 2)
            for k2, t2, m2 in parts[a + 1:]:
                for kind in _product(k1, k2):
                    out[(kind, t1 + t2 + m)] += m1 * m2
        return +out
    if expr == "sl":
        for k1, t1, m1 in _summands(spec, False):
            for k2, t2, m2 in _summands(spec, True):
                for kind in _product(k1, k2):
                    out[(kind, t1 + t2 + m)] += m1 * m2
        out[("O", m)] -= 1  # trace part; may leave a negative count inside Omega⊗T
        return Counter({key: v for key, v in out.items() if v})
    raise SpecError(f"unknown expression {expr}")


_EXPR_NAMES = {"E": "E({m})", "Edual": "E^∨({m})", "S2E": "S²E({m})", "L2Edual": "Λ²E^∨({m})", "sl": "sl(E)({m})"}


def cohomology_table(spec: BundleSpec, expr: str, m: int) -> CohomologyTable:
    atoms = expression_atoms(spec, expr, m)
    dims = [0, 0, 0, 0]
    for (kind, t), mult in atoms.items():
        h = atom_cohomology(kind, t)
        for i in range(4):
            dims[i] += mult * h[i]
    return CohomologyTable(_EXPR_NAMES[expr].format(m=m), dims, dict(atoms))


def expression_euler(spec: BundleSpec, expr: str, m: int) -> int:
    """Euler characteristic computed from the complex terms, not from cohomology."""
    return sum(mult * atom_euler(kind, t) for (kind, t), mult in expression_atoms(spec, expr, m).items())


def resolution_tables(spec: BundleSpec) -> dict[str, CohomologyTable]:
    """Tables for the three terms of the resolution of I_w(5)."""
    d = spec.delta
    return {
        "S2E": cohomology_table(spec, "S2E", 5 + d),
        "sl": cohomology_table(spec, "sl", -1),
        "L2Edual": cohomology_table(spec, "L2Edual", -7 - d),
    }


def derived_dim_tables(spec: BundleSpec) -> dict[str, CohomologyTable]:
    if spec.shape_dims() is None:
        raise SpecError("spec is not of the form Omega(-2)^k + O(-2)^m2 + O(-3)^m3 + O(-4)^m4")
    return resolution_tables(spec)


def shape_closed_forms(k: int, m2: int, m3: int, m4: int) -> dict[str, list[int]]:
    """Closed-form h^0..h^3 of the resolution terms for delta = 1."""
    return {
        "S2E": [
            6 * k * m2 + 10 * comb(m2 + 1, 2) + 4 * m2 * m3 + comb(m3 + 1, 2) + m2 * m4,
            6 * comb(k + 1, 2) + k * m4,
            0,
            0,
        ],
        "sl": [
            4 * k * m2 + m2 * m3 + m3 * m4 + 4 * m2 * m4,
            4 * k * k + k * m3,
            0,
            0,
        ],
        "L2Edual": [comb(m4, 2), comb(k + 1, 2), m2 * k, comb(m2, 2)],
    }


# ------------------------------------------------------ Riemann–Roch, search

def chi_RR(delta: int, node_count: int, n: int) -> int:
    num = 44 + 3 * (2 * n - delta) * (2 * n - 4 - delta) - node_count
    if num % 4:
        raise SpecError(f"inconsistent pair delta={delta}, |w|={node_count}: value {num}/4 is not integral")
    return num // 4


@dataclass(frozen=True)
class Candidate:
    k: int
    m2: int
    m3: int
    m4: int
    nodes: int
    status: str

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.k, self.m2, self.m3, self.m4, self.nodes)


SURVIVING = {(0, 0, 6, 0), (0, 1, 3, 0)}


def _passes_defect_conditions(k: int, m2: int) -> bool:
    return (m2 == 0 and k in (0, 4, 5, 6)) or (m2 == 1 and k == 0)


def enumerate_candidates(bound: int = 8) -> list[Candidate]:
    """Numerical types of minimal 1/2-even sets not cut out by a plane.

    Status is "surviving" for the two types that remain after every
    exclusion, "excluded_defect" when the conditions forced by zero defect
    fail, and "admitted" for the rest.
    """
    out = []
    for k, m2, m3, m4 in product(range(bound + 1), repeat=4):
        nodes = 35 - 4 * (m2 - k)
        if nodes < 1 or m3 > 6 - k or k + 3 * m2 + m3 - m4 != 6:
            continue
        if m2 == 1 and m3 < m4:
            continue
        if (k, m2, m3, m4) in SURVIVING:
            status = "surviving"
        elif not _passes_defect_conditions(k, m2):
            status = "excluded_defect"
        else:
            status = "admitted"
        out.append(Candidate(k, m2, m3, m4, nodes, status))
    return out
