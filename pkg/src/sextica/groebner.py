"""Homogeneous Gröbner bases by degree-by-degree matrix reduction.

In each degree d the engine builds one reducer row per monomial that lies
in the current leading-term ideal, reduces the S-pair halves and new input
generators of degree d against them, and echelonizes what is left on the
standard columns.  Because earlier elements are already fully reduced and
higher-degree elements never divide lower-degree monomials, the result is
the reduced Gröbner basis without a final interreduction pass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FieldError, ResourceError
from .linalg import _rref_inplace, reduce_rows
from .poly import HomogeneousPoly, NVARS, dim_component, mono_array, mono_index

DEFAULT_DEGREE_CAP = 30


@dataclass
class _Elem:
    lm: tuple
    deg: int
    exps: np.ndarray  # (t, 4)
    vals: np.ndarray  # monic, leading term first


def _lcm(a, b):
    return (max(a[0], b[0]), max(a[1], b[1]), max(a[2], b[2]), max(a[3], b[3]))


def _divides(a, b):
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2] and a[3] <= b[3]


def _coprime(a, b):
    return not (a[0] and b[0] or a[1] and b[1] or a[2] and b[2] or a[3] and b[3])


class _Engine:
    def __init__(self, p: int, degree_cap: int):
        self.p = p
        self.cap = degree_cap
        self.G: list[_Elem] = []
        self.pairs: list[tuple[int, int, tuple]] = []

    # --- pair bookkeeping (Gebauer–Möller) ---
    def _add(self, h: _Elem) -> None:
        G = self.G
        k = len(G)
        lh = h.lm
        cand = [(i, _lcm(lh, g.lm)) for i, g in enumerate(G)]
        keep = []
        for a, (i, l) in enumerate(cand):
            if _coprime(lh, G[i].lm):
                keep.append((i, l, True))
                continue
            dominated = False
            for b, (j, l2) in enumerate(cand):
                if b == a:
                    continue
                if _divides(l2, l) and (l2 != l or b < a):
                    dominated = True
                    break
            if not dominated:
                keep.append((i, l, False))
        newpairs = [(i, k, l) for i, l, cop in keep if not cop]
        old = []
        for (i, j, l) in self.pairs:
            if (
                _divides(lh, l)
                and _lcm(G[i].lm, lh) != l
                and _lcm(G[j].lm, lh) != l
            ):
                continue
            old.append((i, j, l))
        self.pairs = old + newpairs
        G.append(h)

    def run(self, gens: list[HomogeneousPoly]) -> list[_Elem]:
        p = self.p
        by_deg: dict[int, list[HomogeneousPoly]] = {}
        for f in gens:
            if f.terms:
                by_deg.setdefault(f.degree, []).append(f)
        if not by_deg:
            return []
        d = min(by_deg)
        while True:
            pending_inputs = [e for e in by_deg if e >= d]
            pair_degs = [sum(l) for (_, _, l) in self.pairs]
            if not pending_inputs and not pair_degs:
                break
            d = min(pending_inputs + pair_degs)
            if d > self.cap:
                raise ResourceError(f"Gröbner basis exceeds degree cap {self.cap}")
            now = [pr for pr in self.pairs if sum(pr[2]) == d]
            self.pairs = [pr for pr in self.pairs if sum(pr[2]) != d]
            self._step(d, now, by_deg.get(d, []))
            d += 1
        return self.G

    def _step(self, d: int, pairs, inputs: list[HomogeneousPoly]) -> None:
        p = self.p
        N = dim_component(d)
        mons = mono_array(d)
        G = self.G
        # reducer table over all monomials in the leading-term ideal
        has_red = np.zeros(N, dtype=np.bool_)
        choice = np.full(N, -1, dtype=np.int64)
        if G:
            L = np.array([g.lm for g in G], dtype=np.int64)
            score = np.array([g.deg * 100000 - len(g.vals) for g in G], dtype=np.int64)
            best = np.full(N, np.iinfo(np.int64).min, dtype=np.int64)
            for gi in range(len(G)):
                if G[gi].deg > d:
                    continue
                div = np.all(mons >= L[gi], axis=1)
                better = div & (score[gi] > best)
                best[better] = score[gi]
                choice[better] = gi
            has_red = choice >= 0
        cols_list, vals_list = [], []
        ptr = np.zeros(N + 1, dtype=np.int64)
        red_idx = np.nonzero(has_red)[0]
        lengths = np.zeros(N, dtype=np.int64)
        for c in red_idx:
            g = G[choice[c]]
            shift = mons[c] - np.array(g.lm, dtype=np.int64)
            cols_list.append(mono_index(d, g.exps + shift))
            vals_list.append(g.vals)
            lengths[c] = len(g.vals)
        ptr[1:] = np.cumsum(lengths)
        red_cols = np.concatenate(cols_list) if cols_list else np.zeros(0, dtype=np.int64)
        red_vals = np.concatenate(vals_list) if vals_list else np.zeros(0, dtype=np.int64)
        # rows to reduce
        rows = []
        seen = set()
        for (i, j, l) in pairs:
            for gi in (i, j):
                if (gi, l) in seen:
                    continue
                seen.add((gi, l))
                g = G[gi]
                shift = np.array(l, dtype=np.int64) - np.array(g.lm, dtype=np.int64)
                c = mono_index(d, (np.array(g.lm, dtype=np.int64) + shift)[None, :])[0]
                if choice[c] == gi:
                    continue  # identical to the reducer row
                rows.append((mono_index(d, g.exps + shift), g.vals))
        for f in inputs:
            e = np.array(list(f.terms.keys()), dtype=np.int64)
            v = np.array(list(f.terms.values()), dtype=np.int64)
            rows.append((mono_index(d, e), v))
        if not rows:
            return
        R = np.zeros((len(rows), N), dtype=np.int64)
        for r, (ci, v) in enumerate(rows):
            R[r, ci] = v
        reduce_rows(R, has_red, ptr, red_cols, red_vals, p)
        free = np.nonzero(~has_red)[0]
        D = np.ascontiguousarray(R[:, free])
        piv = _rref_inplace(D, p, D.shape[1])
        for r in range(len(piv)):
            nz = np.nonzero(D[r])[0]
            ci = free[nz]
            h = _Elem(
                lm=tuple(int(a) for a in mons[free[piv[r]]]),
                deg=d,
                exps=mons[ci].copy(),
                vals=D[r, nz].copy(),
            )
            self._add(h)


def _elem_to_poly(p: int, e: _Elem) -> HomogeneousPoly:
    return HomogeneousPoly(
        p, e.deg, {tuple(int(a) for a in ex): int(v) for ex, v in zip(e.exps, e.vals)}, _trusted=True
    )


def reduced_groebner_basis(
    gens: list[HomogeneousPoly], degree_cap: int = DEFAULT_DEGREE_CAP
) -> list[HomogeneousPoly]:
    """Reduced monic Gröbner basis in degrevlex, sorted by (degree, leading monomial)."""
    gens = [g for g in gens if g.terms]
    if not gens:
        return []
    p = gens[0].p
    for g in gens:
        if g.p != p:
            raise FieldError("generators over different fields")
    G = _Engine(p, degree_cap).run(gens)
    out = [_elem_to_poly(p, e) for e in G]
    from .poly import degrevlex_key

    out.sort(key=lambda f: (f.degree, tuple(-k for k in degrevlex_key(f.leading_monomial()))))
    return out


class NormalForm:
    """Reduction modulo a fixed reduced Gröbner basis, one degree at a time."""

    def __init__(self, basis: list[HomogeneousPoly], p: int):
        self.p = p
        self.basis = basis
        self.lms = [g.leading_monomial() for g in basis]
        self._tables: dict[int, tuple] = {}

    def table(self, d: int):
        if d in self._tables:
            return self._tables[d]
        N = dim_component(d)
        mons = mono_array(d)
        choice = np.full(N, -1, dtype=np.int64)
        best = np.full(N, np.iinfo(np.int64).min, dtype=np.int64)
        for gi, g in enumerate(self.basis):
            if g.degree > d:
                continue
            div = np.all(mons >= np.array(self.lms[gi], dtype=np.int64), axis=1)
            s = g.degree * 100000 - len(g.terms)
            better = div & (s > best)
            best[better] = s
            choice[better] = gi
        has_red = choice >= 0
        ptr = np.zeros(N + 1, dtype=np.int64)
        cols, vals = [], []
        lengths = np.zeros(N, dtype=np.int64)
        for c in np.nonzero(has_red)[0]:
            g = self.basis[choice[c]]
            ex = np.array(list(g.terms.keys()), dtype=np.int64)
            va = np.array(list(g.terms.values()), dtype=np.int64)
            shift = mons[c] - np.array(self.lms[choice[c]], dtype=np.int64)
            cols.append(mono_index(d, ex + shift))
            vals.append(va)
            lengths[c] = len(va)
        ptr[1:] = np.cumsum(lengths)
        rc = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
        rv = np.concatenate(vals) if vals else np.zeros(0, dtype=np.int64)
        standard = np.nonzero(~has_red)[0]
        self._tables[d] = (has_red, ptr, rc, rv, standard)
        return self._tables[d]

    def reduce_dense(self, d: int, R: np.ndarray) -> np.ndarray:
        """Reduce rows of dense degree-d vectors in place and return them."""
        has_red, ptr, rc, rv, _ = self.table(d)
        R = np.ascontiguousarray(R % self.p)
        reduce_rows(R, has_red, ptr, rc, rv, self.p)
        return R

    def standard_positions(self, d: int) -> np.ndarray:
        return self.table(d)[4]

    def reduce(self, f: HomogeneousPoly) -> HomogeneousPoly:
        if not f.terms:
            return f
        R = f.to_dense()[None, :].copy()
        R = self.reduce_dense(f.degree, R)
        return HomogeneousPoly.from_dense(self.p, f.degree, R[0])
