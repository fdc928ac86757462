"""Dense modular rank kernels.

Two interchangeable backends compute the rank of an integer matrix modulo a
prime: a numba-compiled elimination loop and a vectorised numpy version.
Set ``MINOP_DISABLE_NUMBA=1`` to force the numpy path (numba is also skipped
when it cannot be imported).
"""
from __future__ import annotations

import os

import numpy as np

PRIME = 2_147_483_647  # 2**31 - 1; products of residues fit in int64

_DISABLED = os.environ.get("MINOP_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrapper(f):
            return f

        return wrapper


@njit(cache=True)
def _powmod(a, e, p):
    result = 1
    a %= p
    while e > 0:
        if e & 1:
            result = (result * a) % p
        a = (a * a) % p
        e >>= 1
    return result


@njit(cache=True)
def _rank_mod_p_loop(a, p):
    m, n = a.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        piv = -1
        for r in range(rank, m):
            if a[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for c in range(col, n):
                tmp = a[piv, c]
                a[piv, c] = a[rank, c]
                a[rank, c] = tmp
        inv = _powmod(a[rank, col], p - 2, p)
        for c in range(col, n):
            a[rank, c] = (a[rank, c] * inv) % p
        for r in range(rank + 1, m):
            f = a[r, col]
            if f != 0:
                for c in range(col, n):
                    a[r, c] = (a[r, c] - f * a[rank, c]) % p
        rank += 1
    return rank


def _rank_mod_p_numpy(a, p):
    m, n = a.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank, col:] = (a[rank, col:] * inv) % p
        below = a[rank + 1:, col].copy()
        rows = np.nonzero(below)[0]
        if rows.size:
            idx = rank + 1 + rows
            a[idx, col:] = (a[idx, col:] - below[rows, None] * a[rank, col:]) % p
        rank += 1
    return rank


def rank_mod_p(matrix, p: int = PRIME, backend: str | None = None) -> int:
    """Rank of an integer matrix over ``Z/p``.

    ``backend`` is ``"numba"``, ``"numpy"`` or ``None`` (numba when available).
    """
    a = np.array(matrix, dtype=np.int64, copy=True)
    if a.ndim != 2 or a.size == 0:
        return 0
    a %= p
    if backend is None:
        backend = "numba" if HAVE_NUMBA else "numpy"
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is disabled or missing")
        return int(_rank_mod_p_loop(a, p))
    if backend == "numpy":
        return _rank_mod_p_numpy(a, p)
    raise ValueError(f"unknown backend {backend!r}")
