"""Dense linear algebra over GF(p) on int64 arrays.

Each kernel exists twice: a numba ``@njit`` loop (``_numba_kernels``) and a
vectorised numpy version.  The numba path is used for matrices of at least
``NUMBA_MIN_SIZE`` entries when numba is installed and the environment
variable ``KOSZULREG_NUMBA`` is not set to ``0``.
"""

import importlib.util
import os

import numpy as np

_WANT_NUMBA = os.environ.get("KOSZULREG_NUMBA", "1").lower() not in ("0", "false", "no", "off")

HAVE_NUMBA = _WANT_NUMBA and importlib.util.find_spec("numba") is not None
_NB = None


def _nb():
    """The compiled kernels, imported on first use (numba import is slow)."""
    global _NB
    if _NB is None:
        from . import _numba_kernels
        _NB = _numba_kernels
    return _NB


# Below this many entries the numpy path wins: loading the compiled kernels
# costs ~0.2 s once, and tiny matrices never pay it back.
NUMBA_MIN_SIZE = 2500


def _rref_numpy(A, p):
    A = A % p
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            A[rows] = (A[rows] - np.outer(col[rows], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], np.array(pivots, dtype=np.int64)


def _rank_numpy(A, p):
    A = A % p
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1:, c]
        rows = np.nonzero(below)[0]
        if rows.size:
            rows += r + 1
            A[rows] = (A[rows] - np.outer(A[rows, c], A[r])) % p
        r += 1
    return r


def _as_int64(A):
    return np.array(A, dtype=np.int64, copy=True, ndmin=2)


def rank_mod_p(A, p, use_numba=None):
    """Rank of an integer matrix reduced mod ``p``."""
    A = _as_int64(A)
    if A.size == 0:
        return 0
    if use_numba is None:
        use_numba = HAVE_NUMBA and A.size >= NUMBA_MIN_SIZE
    if use_numba:
        if not HAVE_NUMBA:
            raise RuntimeError("numba kernels unavailable")
        return int(_nb()._rank_numba(A, p))
    return _rank_numpy(A, p)


def rref_mod_p(A, p, use_numba=None):
    """Reduced row echelon form mod ``p``; returns (nonzero rows, pivot columns)."""
    A = _as_int64(A)
    if A.size == 0:
        return np.zeros((0, A.shape[1]), dtype=np.int64), np.zeros(0, dtype=np.int64)
    if use_numba is None:
        use_numba = HAVE_NUMBA and A.size >= NUMBA_MIN_SIZE
    if use_numba:
        if not HAVE_NUMBA:
            raise RuntimeError("numba kernels unavailable")
        return _nb()._rref_numba(A, p)
    return _rref_numpy(A, p)
