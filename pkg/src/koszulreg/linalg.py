"""Exact rank and row reduction for sparse matrices over QQ or GF(p).

Matrices are lists of rows, each a dict ``{column: value}``.  Rank splits
the matrix into connected blocks (rows sharing columns) first: graded and
multigraded maps are block diagonal after a permutation, so the dense
kernels only ever see small pieces.
"""

from fractions import Fraction

import numpy as np

from ._kernels import rank_mod_p

DENSE_LIMIT = 1 << 31  # int64 kernels need p*p to fit


def _components(rows):
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in rows:
        it = iter(r)
        first = next(it, None)
        if first is None:
            continue
        parent.setdefault(first, first)
        a = find(first)
        for c in it:
            parent.setdefault(c, c)
            b = find(c)
            if a != b:
                parent[b] = a
    groups = {}
    for i, r in enumerate(rows):
        if r:
            groups.setdefault(find(next(iter(r))), []).append(i)
    return list(groups.values())


def echelon(rows, p):
    """Sparse Gaussian elimination; returns ``{pivot_col: row}`` (pivot entry 1)."""
    piv = {}
    for r in rows:
        r = dict(r)
        while r:
            c = min(r)
            if c in piv:
                a = r[c]
                for k, x in piv[c].items():
                    v = r.get(k, 0) - a * x
                    if p:
                        v %= p
                    if v:
                        r[k] = v
                    else:
                        r.pop(k, None)
            else:
                a = r[c]
                if p:
                    inv = pow(a, -1, p)
                    r = {k: (x * inv) % p for k, x in r.items()}
                else:
                    inv = 1 / Fraction(a)
                    r = {k: x * inv for k, x in r.items()}
                piv[c] = r
                break
    return piv


def _dense_rank(rows, p):
    cols = sorted({c for r in rows for c in r})
    idx = {c: i for i, c in enumerate(cols)}
    A = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for i, r in enumerate(rows):
        for c, x in r.items():
            A[i, idx[c]] = x
    return rank_mod_p(A, p)


def rank(rows, p):
    """Rank of a sparse matrix over GF(p) (p > 0) or QQ (p == 0)."""
    rows = [r for r in rows if r]
    if not rows:
        return 0
    total = 0
    for comp in _components(rows):
        sub = [rows[i] for i in comp]
        if len(sub) == 1:
            total += 1
            continue
        if p and p < DENSE_LIMIT and len(sub) > 8:
            total += _dense_rank(sub, p)
        else:
            total += len(echelon(sub, p))
    return total


def nullity(rows, ncols, p):
    return ncols - rank(rows, p)


def span_basis(rows, p):
    """A row-echelon basis of the span of ``rows``."""
    return list(echelon(rows, p).values())
