"""numba versions of the GF(p) kernels; imported lazily by ``_kernels``."""

import numpy as np
from numba import njit


@njit(cache=True)
def _inv_mod(a, p):
    # extended Euclid; a is a nonzero residue
    t, newt = 0, 1
    r, newr = p, a
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


@njit(cache=True)
def _rank_numba(A, p):
    m, n = A.shape
    for i in range(m):
        for j in range(n):
            A[i, j] %= p
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
        inv = _inv_mod(A[r, c], p)
        for j in range(c, n):
            A[r, j] = (A[r, j] * inv) % p
        for i in range(r + 1, m):
            f = A[i, c]
            if f != 0:
                for j in range(c, n):
                    A[i, j] = (A[i, j] - f * A[r, j]) % p
        r += 1
    return r


@njit(cache=True)
def _rref_numba(A, p):
    m, n = A.shape
    for i in range(m):
        for j in range(n):
            A[i, j] %= p
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
            for j in range(n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _inv_mod(A[r, c], p)
        for j in range(c, n):
            A[r, j] = (A[r, j] * inv) % p
        for i in range(m):
            if i == r:
                continue
            f = A[i, c]
            if f != 0:
                for j in range(c, n):
                    A[i, j] = (A[i, j] - f * A[r, j]) % p
        pivots[r] = c
        r += 1
    return A[:r].copy(), pivots[:r].copy()
