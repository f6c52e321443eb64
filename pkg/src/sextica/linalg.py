"""Dense linear algebra over F_p on int64 arrays.

All kernels assume 0 <= entries < p and p < 2**31 so products fit in int64.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _inv(a, p):
    # extended Euclid; a is nonzero mod p
    t, newt = 0, 1
    r, newr = p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


@njit(cache=True)
def _rref_inplace(A, p, ncols_limit):
    """Reduced row echelon form in place; returns pivot columns (length = rank)."""
    m, n = A.shape
    if ncols_limit < n:
        n = ncols_limit
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(A.shape[1]):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _inv(A[r, c], p)
        for j in range(c, A.shape[1]):
            if A[r, j] != 0:
                A[r, j] = A[r, j] * inv % p
        for i in range(m):
            if i != r:
                f = A[i, c]
                if f != 0:
                    for j in range(c, A.shape[1]):
                        v = A[r, j]
                        if v != 0:
                            A[i, j] = (A[i, j] - f * v) % p
        pivots[r] = c
        r += 1
    return pivots[:r]


@njit(cache=True)
def _rank_inplace(A, p):
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _inv(A[r, c], p)
        for j in range(c, n):
            if A[r, j] != 0:
                A[r, j] = A[r, j] * inv % p
        for i in range(r + 1, m):
            f = A[i, c]
            if f != 0:
                for j in range(c, n):
                    v = A[r, j]
                    if v != 0:
                        A[i, j] = (A[i, j] - f * v) % p
        r += 1
    return r


def _prep(A, p) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(A, dtype=np.int64) % p)


def rref_mod(A, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Return (R, pivots) with R the nonzero rows of the reduced echelon form."""
    A = _prep(A, p).copy()
    if A.size == 0:
        return A[:0], np.zeros(0, dtype=np.int64)
    piv = _rref_inplace(A, p, A.shape[1])
    return A[: len(piv)], piv


def rank_mod(A, p: int) -> int:
    A = _prep(A, p).copy()
    if A.size == 0:
        return 0
    # eliminate along the shorter side
    if A.shape[0] > A.shape[1]:
        A = np.ascontiguousarray(A.T)
    return int(_rank_inplace(A, p))


def nullspace_mod(A, p: int) -> np.ndarray:
    """Basis of {v : A v = 0} as rows of the returned array."""
    A = _prep(A, p)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref_mod(A, p)
    pivset = set(int(c) for c in piv)
    free = [c for c in range(n) if c not in pivset]
    N = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        N[k, f] = 1
        for i, c in enumerate(piv):
            N[k, c] = (-R[i, f]) % p
    return N


def inverse_mod(A, p: int) -> np.ndarray:
    A = _prep(A, p)
    n = A.shape[0]
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    piv = _rref_inplace(aug, p, n)
    if len(piv) != n:
        raise ZeroDivisionError("matrix is singular")
    return aug[:, n:].copy()


def solve_mod(A, b, p: int) -> np.ndarray | None:
    """One solution of A x = b, or None when inconsistent."""
    A = _prep(A, p)
    b = _prep(b, p).reshape(-1, 1)
    aug = np.concatenate([A, b], axis=1)
    n = A.shape[1]
    piv = _rref_inplace(aug, p, n + 1)
    if len(piv) and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = aug[i, n]
    return x


def matmul_mod(A, B, p: int) -> np.ndarray:
    """Product mod p without int64 overflow for p < 2**31."""
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    # split B into 16-bit halves so each partial sum stays below 2**63
    lo = B & 0xFFFF
    hi = B >> 16
    k = A.shape[1]
    if k * (p - 1) * 0xFFFF < 2**62:
        r_lo = (A @ lo) % p
        r_hi = (A @ hi) % p
        return (r_lo + (r_hi * 65536) % p) % p
    return _matmul_loop(A, B, p)


@njit(cache=True)
def _matmul_loop(A, B, p):
    m, k = A.shape
    n = B.shape[1]
    C = np.zeros((m, n), dtype=np.int64)
    for i in range(m):
        for t in range(k):
            a = A[i, t]
            if a != 0:
                for j in range(n):
                    C[i, j] = (C[i, j] + a * B[t, j]) % p
    return C


# ---------------------------------------------------------------- F4 kernel

@njit(cache=True)
def reduce_rows(R, has_red, red_ptr, red_cols, red_vals, p):
    """Reduce each dense row of R by sparse monic reducers, leftmost first.

    Reducer for column c occupies red_cols/red_vals[red_ptr[c]:red_ptr[c+1]]
    and has coefficient 1 at column c, with all other columns > c.
    """
    m, n = R.shape
    for r in range(m):
        for c in range(n):
            a = R[r, c]
            if a != 0 and has_red[c]:
                for t in range(red_ptr[c], red_ptr[c + 1]):
                    j = red_cols[t]
                    R[r, j] = (R[r, j] - a * red_vals[t]) % p


# ------------------------------------------------------------- polynomials
# univariate polynomials over F_p as Python int lists, lowest degree first

def upoly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def upoly_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    f = upoly_trim(list(f))
    g = upoly_trim(list(g))
    if not g:
        raise ZeroDivisionError
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        k = len(f) - len(g)
        q[k] = c
        for i, gi in enumerate(g):
            f[k + i] = (f[k + i] - c * gi) % p
        upoly_trim(f)
    return q, f


def upoly_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    a, b = upoly_trim(list(f)), upoly_trim(list(g))
    while b:
        a, b = b, upoly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def upoly_derivative(f: list[int], p: int) -> list[int]:
    return upoly_trim([i * c % p for i, c in enumerate(f)][1:])


def upoly_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return upoly_divmod(prod, m, p)[1]


def upoly_powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = upoly_divmod(base, m, p)[1]
    while e:
        if e & 1:
            result = upoly_mulmod(result, base, m, p)
        base = upoly_mulmod(base, base, m, p)
        e >>= 1
    return result


def upoly_is_squarefree(f: list[int], p: int) -> bool:
    f = upoly_trim(list(f))
    if len(f) <= 2:
        return True
    d = upoly_derivative(f, p)
    if not d:
        return False
    return len(upoly_gcd(f, d, p)) == 1


def distinct_degree_pattern(f: list[int], p: int) -> list[int]:
    """Degrees of the irreducible factors of a squarefree f (sorted)."""
    f = upoly_trim(list(f))
    inv = pow(f[-1], p - 2, p)
    f = [c * inv % p for c in f]
    degs: list[int] = []
    h = [0, 1]
    k = 0
    while len(f) - 1 >= 2 * (k + 1):
        k += 1
        h = upoly_powmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = upoly_gcd(f, upoly_trim(diff), p)
        if len(g) > 1:
            degs += [k] * ((len(g) - 1) // k)
            f = upoly_divmod(f, g, p)[0]
            h = upoly_divmod(h, f, p)[1] if len(f) > 1 else h
    if len(f) > 1:
        degs.append(len(f) - 1)
    return sorted(degs)


def minimal_polynomial(M: np.ndarray, p: int, rng: np.random.Generator, tries: int = 3) -> list[int]:
    """Minimal polynomial of a square matrix (Krylov, lcm over random vectors)."""
    n = M.shape[0]
    result = [1]
    for _ in range(tries):
        v = rng.integers(0, p, size=n).astype(np.int64)
        K = np.zeros((n + 1, n), dtype=np.int64)
        K[0] = v
        for i in range(1, n + 1):
            K[i] = matmul_mod(M, K[i - 1].reshape(-1, 1), p).ravel()
        # first linear dependency among v, Mv, M^2 v, ...
        for k in range(1, n + 1):
            sol = solve_mod(K[:k].T, (-K[k]) % p, p)
            if sol is not None:
                poly = [int(c) for c in sol] + [1]
                break
        g = upoly_gcd(result, poly, p)
        q = upoly_divmod(result, g, p)[0]
        prod = [0] * (len(q) + len(poly) - 1)
        for i, a in enumerate(q):
            for j, b in enumerate(poly):
                prod[i + j] = (prod[i + j] + a * b) % p
        result = prod
        if len(result) - 1 == n:
            break
    return result
