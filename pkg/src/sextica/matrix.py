"""Matrices whose entries are homogeneous forms with compatible degrees."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import DegreeError, FieldError
from .poly import HomogeneousPoly, check_char


class MatrixOfForms:
    """Map of split bundles  sum_j O(col_twists[j]) -> sum_i O(row_twists[i]).

    Entry (i, j) is a form of degree row_twists[i] - col_twists[j]; a
    negative required degree forces the entry to be zero.
    """

    def __init__(self, p: int, row_twists: Sequence[int], col_twists: Sequence[int], entries):
        self.p = check_char(p)
        self.row_twists = [int(t) for t in row_twists]
        self.col_twists = [int(t) for t in col_twists]
        rows = []
        for i, rt in enumerate(self.row_twists):
            row = []
            for j, ct in enumerate(self.col_twists):
                f = entries[i][j]
                want = rt - ct
                if f is None or (isinstance(f, int) and f == 0):
                    f = HomogeneousPoly.zero(self.p, want)
                if f.p != self.p:
                    raise FieldError("entry over a different field")
                if f.terms and f.degree != want:
                    raise DegreeError(f"entry ({i},{j}) has degree {f.degree}, expected {want}")
                if not f.terms and f.degree != want:
                    f = HomogeneousPoly.zero(self.p, want)
                row.append(f)
            rows.append(row)
        self.entries = rows

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_twists), len(self.col_twists)

    def __getitem__(self, ij) -> HomogeneousPoly:
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "MatrixOfForms":
        # (M^T) maps sum O(-row) -> sum O(-col)
        return MatrixOfForms(
            self.p,
            [-t for t in self.col_twists],
            [-t for t in self.row_twists],
            [[self.entries[i][j] for i in range(self.shape[0])] for j in range(self.shape[1])],
        )

    def is_symmetric(self) -> bool:
        n, m = self.shape
        return n == m and all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def compose(self, other: "MatrixOfForms") -> "MatrixOfForms":
        """self after other."""
        if list(other.row_twists) != list(self.col_twists):
            raise DegreeError("twists do not match for composition")
        n, k = self.shape
        m = other.shape[1]
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = HomogeneousPoly.zero(self.p, self.row_twists[i] - other.col_twists[j])
                for t in range(k):
                    a, b = self.entries[i][t], other.entries[t][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return MatrixOfForms(self.p, self.row_twists, other.col_twists, out)

    def is_zero(self) -> bool:
        return all(not f.terms for row in self.entries for f in row)

    def evaluate(self, point) -> np.ndarray:
        return np.array([[f.evaluate(point) for f in row] for row in self.entries], dtype=np.int64)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> HomogeneousPoly:
        return _Minors(self).get(tuple(rows), tuple(cols))

    def minors(self, k: int) -> list[HomogeneousPoly]:
        """All k x k minors, Laplace expansion with shared subminors."""
        n, m = self.shape
        if k <= 0:
            return [HomogeneousPoly(self.p, 0, {(0, 0, 0, 0): 1})]
        if k > min(n, m):
            return []
        memo = _Minors(self)
        sym = self.is_symmetric()
        out = []
        for R in combinations(range(n), k):
            for C in combinations(range(m), k):
                if sym and C < R:
                    continue
                out.append(memo.get(R, C))
        return out

    def determinant(self) -> HomogeneousPoly:
        return bareiss_determinant(self)

    def to_json(self) -> dict:
        return {
            "char": self.p,
            "row_twists": self.row_twists,
            "col_twists": self.col_twists,
            "entries": [[f.to_json() for f in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj) -> "MatrixOfForms":
        return cls(
            int(obj["char"]),
            obj["row_twists"],
            obj["col_twists"],
            [[HomogeneousPoly.from_json(f) for f in row] for row in obj["entries"]],
        )


class _Minors:
    def __init__(self, M: MatrixOfForms):
        self.M = M
        self.memo: dict = {}

    def get(self, R: tuple, C: tuple) -> HomogeneousPoly:
        key = (R, C)
        if key in self.memo:
            return self.memo[key]
        M = self.M
        if len(R) == 1:
            val = M.entries[R[0]][C[0]]
        else:
            r0, rest = R[0], R[1:]
            deg = sum(M.row_twists[i] for i in R) - sum(M.col_twists[j] for j in C)
            val = HomogeneousPoly.zero(M.p, deg)
            for k, c in enumerate(C):
                a = M.entries[r0][c]
                if not a.terms:
                    continue
                sub = self.get(rest, C[:k] + C[k + 1:])
                if not sub.terms:
                    continue
                term = a * sub
                val = val + term if k % 2 == 0 else val - term
            if not val.terms:
                val = HomogeneousPoly.zero(M.p, deg)
        self.memo[key] = val
        return val


def matrix_minor(m: MatrixOfForms, rows: Sequence[int], cols: Sequence[int]) -> HomogeneousPoly:
    if len(rows) != len(cols) or len(rows) > min(m.shape):
        raise DegreeError("minor needs equally many rows and columns")
    return m.minor(rows, cols)


def bareiss_determinant(M: MatrixOfForms) -> HomogeneousPoly:
    """Fraction-free elimination with exact polynomial division."""
    n, m = M.shape
    if n != m:
        raise DegreeError("determinant of a non-square matrix")
    p = M.p
    deg = sum(M.row_twists) - sum(M.col_twists)
    if n == 0:
        return HomogeneousPoly(p, 0, {(0, 0, 0, 0): 1})
    A = [list(row) for row in M.entries]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k].terms:
            swap = next((i for i in range(k + 1, n) if A[i][k].terms), None)
            if swap is None:
                return HomogeneousPoly.zero(p, deg)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = A[i][j] * A[k][k] - A[i][k] * A[k][j] if A[i][k].terms else A[i][j] * A[k][k]
                if prev is not None:
                    v = v.exact_divide(prev) if v.terms else HomogeneousPoly.zero(p, v.degree - prev.degree)
                A[i][j] = v
            A[i][k] = HomogeneousPoly.zero(p, 0)
        prev = A[k][k]
    det = A[n - 1][n - 1]
    if not det.terms:
        return HomogeneousPoly.zero(p, deg)
    return det if sign == 1 else -det


def laplace_determinant(M: MatrixOfForms) -> HomogeneousPoly:
    n = M.shape[0]
    return _Minors(M).get(tuple(range(n)), tuple(range(n)))
