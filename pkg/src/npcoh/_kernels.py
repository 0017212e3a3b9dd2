"""Rank of an integer matrix modulo a prime.

This is the hot loop of the slice engine.  Two implementations share one
contract: a numba-compiled sparse echelon, and a vectorised dense numpy
elimination as the fallback.
Setting ``NPCOH_DISABLE_NUMBA=1`` (or running without numba installed)
selects the fallback.

The rank modulo a prime never exceeds the rank over Q, so callers may use it
as a certified lower bound; it is never reported as an exact rank on its own.
"""

from __future__ import annotations

import os

import numpy as np

PRIME = 2_147_483_647  # 2**31 - 1; products of residues fit in int64

_DISABLED = os.environ.get("NPCOH_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    import numba
except ImportError:  # pragma: no cover - exercised via the env flag
    numba = None


def _sparse_rank_py(colptr, rowidx, vals, nrows, p):
    """Rank of a CSC matrix mod ``p`` by a sparse echelon with max-index pivots.

    Each column is scattered into a dense accumulator and swept once from the
    bottom row up: a pivot led by row ``i`` only touches rows ``<= i``, so a
    single pass clears every entry it can, and the first entry it cannot
    clear becomes a new pivot.
    """
    ncols = colptr.shape[0] - 1
    start = np.full(nrows, -1, np.int64)
    length = np.zeros(nrows, np.int64)
    cap = max(16, 4 * rowidx.shape[0])
    pidx = np.empty(cap, np.int64)
    pval = np.empty(cap, np.int64)
    used = 0
    acc = np.zeros(nrows, np.int64)
    rank = 0
    for c in range(ncols):
        top = -1
        for t in range(colptr[c], colptr[c + 1]):
            r = rowidx[t]
            acc[r] = vals[t]
            if r > top:
                top = r
        i = top
        while i >= 0:
            a = acc[i]
            if a != 0:
                s = start[i]
                if s < 0:
                    break
                # the pivot is stored with leading entry 1 at row i
                for t in range(s, s + length[i]):
                    r = pidx[t]
                    acc[r] = (acc[r] - a * pval[t]) % p
            i -= 1
        if i >= 0:
            # inverse of the new leading entry, by Fermat
            x = acc[i]
            e = p - 2
            inv = 1
            while e > 0:
                if e & 1:
                    inv = inv * x % p
                x = x * x % p
                e >>= 1
            nnz = 0
            for r in range(i + 1):
                if acc[r] != 0:
                    nnz += 1
            if used + nnz > cap:
                while used + nnz > cap:
                    cap *= 2
                nidx = np.empty(cap, np.int64)
                nval = np.empty(cap, np.int64)
                nidx[:used] = pidx[:used]
                nval[:used] = pval[:used]
                pidx = nidx
                pval = nval
            start[i] = used
            length[i] = nnz
            for r in range(i + 1):
                if acc[r] != 0:
                    pidx[used] = r
                    pval[used] = acc[r] * inv % p
                    used += 1
                    acc[r] = 0
            rank += 1
        # rows above i were cleared during the sweep
    return rank


if numba is not None:
    _sparse_rank_jit = numba.njit(cache=True, nogil=True)(_sparse_rank_py)
else:
    _sparse_rank_jit = None


def _rank_mod_numpy(a, p):
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv], c:] = a[[piv, r], c:]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = a[r, c:] * inv % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            fac = a[below, c][:, None]
            a[below, c:] = (a[below, c:] - fac * a[r, c:] % p) % p
        r += 1
    return r


def backend() -> str:
    return "numba" if _sparse_rank_jit is not None else "numpy"


def dense_residues(columns, nrows: int, p: int = PRIME) -> np.ndarray:
    """Dense ``ncols x nrows`` residue matrix (the transpose, one row per column)."""
    a = np.zeros((len(columns), nrows), dtype=np.int64)
    for j, col in enumerate(columns):
        for i, x in col.items():
            a[j, i] = x % p
    return a


def csc_residues(columns, p: int = PRIME):
    """``(colptr, rowidx, vals)`` of the sparse columns reduced mod ``p``."""
    colptr = np.zeros(len(columns) + 1, np.int64)
    total = 0
    for j, col in enumerate(columns):
        total += len(col)
        colptr[j + 1] = total
    rowidx = np.empty(total, np.int64)
    vals = np.empty(total, np.int64)
    t = 0
    for col in columns:
        for i, x in col.items():
            rowidx[t] = i
            vals[t] = x % p
            t += 1
    return colptr, rowidx, vals


def rank_mod(columns, nrows: int, p: int = PRIME, use: str | None = None) -> int:
    """Rank modulo ``p`` of the matrix whose sparse integer columns are given.

    ``use`` forces ``"numba"`` (sparse compiled echelon), ``"numpy"``
    (vectorised dense elimination) or ``"python"`` (the sparse echelon run
    uncompiled, for testing); by default the active backend is used.
    """
    if not columns or nrows == 0:
        return 0
    use = use or backend()
    if use in ("numba", "python"):
        fn = _sparse_rank_jit if use == "numba" else _sparse_rank_py
        if fn is None:
            raise RuntimeError("numba backend requested but unavailable")
        colptr, rowidx, vals = csc_residues(columns, p)
        return int(fn(colptr, rowidx, vals, nrows, p))
    if use == "numpy":
        a = dense_residues(columns, nrows, p)
        # rank is transpose-invariant; eliminate along the shorter side
        if a.shape[1] > a.shape[0]:
            a = np.ascontiguousarray(a.T)
        return _rank_mod_numpy(a, p)
    raise ValueError(f"unknown backend {use!r}")
