"""Binary codes spanned by even sets of nodes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import HypothesisError, SexticaError
from .linalg import rank_mod


@dataclass(frozen=True)
class F2Vector:
    """Subset of {0..length-1} stored as an int bitmask."""

    bits: int
    length: int

    @classmethod
    def from_indices(cls, indices: Iterable[int], length: int) -> "F2Vector":
        b = 0
        for i in indices:
            if not 0 <= i < length:
                raise ValueError(f"index {i} out of range")
            b ^= 1 << i
        return cls(b, length)

    def indices(self) -> list[int]:
        return [i for i in range(self.length) if self.bits >> i & 1]

    @property
    def weight(self) -> int:
        return bin(self.bits).count("1")

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if other.length != self.length:
            raise SexticaError("length mismatch")
        return F2Vector(self.bits ^ other.bits, self.length)

    def __bool__(self) -> bool:
        return bool(self.bits)

    def support_in(self, other: "F2Vector") -> bool:
        return self.bits & ~other.bits == 0


def _reduce(basis: list[int], v: int) -> int:
    # basis kept with distinct leading (highest) bits, fully reduced
    for b in basis:
        if v ^ b < v:
            v ^= b
    return v


def _echelon(vectors: Iterable[int]) -> list[int]:
    basis: list[int] = []
    for v in vectors:
        v = _reduce(basis, v)
        if v:
            top = v.bit_length() - 1
            basis = [b ^ v if b >> top & 1 else b for b in basis]
            basis.append(v)
            basis.sort(reverse=True)
    return basis


@dataclass(frozen=True)
class NodeCode:
    ambient_size: int
    basis: tuple[int, ...]  # reduced echelon form, descending leading bits

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def generators(self) -> list[F2Vector]:
        return [F2Vector(b, self.ambient_size) for b in self.basis]

    def contains(self, w: F2Vector) -> bool:
        return w.length == self.ambient_size and _reduce(list(self.basis), w.bits) == 0

    def elements(self) -> list[F2Vector]:
        out = []
        for coeffs in product((0, 1), repeat=self.dim):
            v = 0
            for c, b in zip(coeffs, self.basis):
                if c:
                    v ^= b
            out.append(F2Vector(v, self.ambient_size))
        return out

    def to_json(self) -> dict:
        return {"ambient": self.ambient_size, "generators": [g.indices() for g in self.generators]}

    @classmethod
    def from_json(cls, obj) -> "NodeCode":
        n = int(obj["ambient"])
        return code_span([F2Vector.from_indices(g, n) for g in obj["generators"]])


def code_span(generators: Sequence[F2Vector], ambient_size: int | None = None) -> NodeCode:
    lengths = {g.length for g in generators}
    if ambient_size is not None:
        lengths.add(ambient_size)
    if len(lengths) > 1:
        raise SexticaError("generators have different lengths")
    n = lengths.pop() if lengths else 0
    return NodeCode(n, tuple(_echelon(g.bits for g in generators)))


def code_dim(code: NodeCode) -> int:
    return code.dim


def is_minimal(w: F2Vector, code: NodeCode) -> bool:
    """No nonzero code word other than w has support inside w.

    Code words supported in w are the solutions c of c.G with zero outside
    supp(w), so the count is 2^(dim - rank of G restricted to the complement).
    """
    if not w:
        raise SexticaError("the zero vector is not an even set")
    if not code.contains(w):
        raise SexticaError("w is not in the code")
    outside = ~w.bits & ((1 << code.ambient_size) - 1)
    restricted = _echelon(b & outside for b in code.basis)
    return code.dim - len(restricted) == 1


def red_to_algebra_check(subsets: Sequence[F2Vector], K, p: int) -> bool:
    """dim K >= m, after verifying that K meets every coordinate subspace C_{w_I}.

    K is given by rows spanning a subspace of F_p^n.  Raises HypothesisError
    when the subsets are dependent or some combination w_I misses K.
    """
    m = len(subsets)
    if code_span(subsets).dim != m:
        raise HypothesisError("subsets are not linearly independent over F2")
    K = np.asarray(K, dtype=np.int64) % p
    if K.ndim != 2 or (m and K.shape[1] != subsets[0].length):
        raise SexticaError("K has the wrong number of coordinates")
    dimK = rank_mod(K, p) if K.size else 0
    n = K.shape[1]
    for coeffs in product((0, 1), repeat=m):
        if not any(coeffs):
            continue
        v = 0
        for c, s in zip(coeffs, subsets):
            if c:
                v ^= s.bits
        outside = [j for j in range(n) if not v >> j & 1]
        r = rank_mod(K[:, outside], p) if outside and dimK else 0
        if dimK - r == 0:
            raise HypothesisError(f"K meets no vector supported on combination {coeffs}")
    return dimK >= m


def torsion_lower_bound(code_dim: int, defect_sing: int) -> int:
    if code_dim < 0 or defect_sing < 0:
        raise ValueError("inputs must be non-negative")
    return max(0, code_dim - defect_sing)


def codes_defect_consistency(code: NodeCode, defects: Mapping[int, int], defect_sing: int) -> bool:
    """If every nonzero code word has positive defect then d(Sing) >= dim.

    ``defects`` maps the bitmask of each nonzero code word to its defect.
    """
    words = [w for w in code.elements() if w]
    missing = [w.bits for w in words if w.bits not in defects]
    if missing:
        raise SexticaError(f"{len(missing)} code words have no defect")
    if all(defects[w.bits] >= 1 for w in words):
        return defect_sing >= code.dim
    return True


def type_d_code() -> NodeCode:
    """Synthetic 56-set code of dimension 7.

    Nodes are pairs (a, b) with a a nonzero vector of F2^3 and b in F2^3.
    The code is spanned by the whole set and the coordinate half-spaces
    a_i = 1 and b_i = 1.
    """
    nodes = [(a, b) for a in range(1, 8) for b in range(8)]
    n = len(nodes)
    gens = [F2Vector.from_indices(range(n), n)]
    for i in range(3):
        gens.append(F2Vector.from_indices([k for k, (a, _) in enumerate(nodes) if a >> i & 1], n))
        gens.append(F2Vector.from_indices([k for k, (_, b) in enumerate(nodes) if b >> i & 1], n))
    return code_span(gens)
