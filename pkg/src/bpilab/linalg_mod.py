"""Dense linear algebra over a prime field GF(p), p < 2**31."""
from __future__ import annotations

import numpy as np


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduced echelon form (nonzero rows only) and pivot columns."""
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        if col.any():
            A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {x : A x = 0}."""
    R, piv = rref(A, p)
    n = A.shape[1]
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, c in enumerate(piv):
            out[t, c] = (-R[i, f]) % p
    return out


def charpoly(B: np.ndarray, p: int) -> np.ndarray:
    """Characteristic polynomial (coefficients, highest degree first).

    Reduces to Hessenberg form by similarity, which needs no division by
    small integers, so it is valid for any prime.
    """
    H = np.array(B, dtype=np.int64) % p
    n = H.shape[0]
    for m in range(1, n - 1):
        nz = np.flatnonzero(H[m:, m - 1])
        if nz.size == 0:
            continue
        i = m + int(nz[0])
        if i != m:
            H[[i, m]] = H[[m, i]]
            H[:, [i, m]] = H[:, [m, i]]
        inv = pow(int(H[m, m - 1]), -1, p)
        for j in range(m + 1, n):
            if H[j, m - 1]:
                u = H[j, m - 1] * inv % p
                H[j] = (H[j] - u * H[m]) % p
                H[:, m] = (H[:, m] + u * H[:, j]) % p
    polys = [np.array([1], dtype=np.int64)]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        pm = np.concatenate([prev, [0]]) - H[m - 1, m - 1] * np.concatenate([[0], prev])
        pm %= p
        t = 1
        for i in range(1, m):
            t = t * H[m - i, m - i - 1] % p
            if not t:
                break
            coef = t * H[m - i - 1, m - 1] % p
            lower = polys[m - i - 1]
            pm[len(pm) - len(lower):] = (pm[len(pm) - len(lower):] - coef * lower) % p
        polys.append(pm % p)
    return polys[n]


def roots(poly: np.ndarray, p: int) -> list[int]:
    """All roots in GF(p) by evaluation at every field element."""
    x = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in poly:
        acc = (acc * x + int(c)) % p
    return np.flatnonzero(acc == 0).tolist()


def eigenspaces(B: np.ndarray, p: int) -> list[tuple[int, np.ndarray]]:
    """(eigenvalue, row basis) pairs; raises if B is not diagonalizable over GF(p)."""
    n = B.shape[0]
    out = []
    for lam in roots(charpoly(B, p), p):
        N = nullspace((B - lam * np.eye(n, dtype=np.int64)) % p, p)
        out.append((lam, N))
    if sum(len(N) for _, N in out) != n:
        raise ArithmeticError("matrix is not diagonalizable over the prime field")
    return out
