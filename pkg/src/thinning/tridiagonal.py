"""Eigenvalues of real symmetric tridiagonal matrices by Sturm bisection.

Works on a batch of matrices at once: ``diag`` has shape ``(B, N)`` and
``off`` shape ``(B, N - 1)``. Each requested eigenvalue (a pair of matrix
index and ascending eigenvalue index) is bisected independently inside the
Gershgorin interval of its matrix, so a value does not depend on which
other eigenvalues are requested alongside it.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["gershgorin_bounds", "sturm_count", "eigvalsh_tridiagonal", "eigvals_above"]

RTOL = 1e-12
_TINY = np.finfo(float).tiny


def _as_batch(diag, off):
    d = np.atleast_2d(np.asarray(diag, dtype=float))
    e = np.asarray(off, dtype=float).reshape(d.shape[0], d.shape[1] - 1)
    return d, e


def gershgorin_bounds(diag, off):
    """Per-matrix interval ``(lo, hi)`` containing every eigenvalue."""
    d, e = _as_batch(diag, off)
    ae = np.abs(e)
    radius = np.zeros_like(d)
    radius[:, :-1] += ae
    radius[:, 1:] += ae
    return (d - radius).min(axis=1), (d + radius).max(axis=1)


def _pivmin(e2: np.ndarray) -> np.ndarray:
    """Smallest pivot magnitude allowed, one per matrix."""
    top = e2.max(axis=1) if e2.shape[1] else np.ones(e2.shape[0])
    return _TINY * np.maximum(1.0, top)


def _count(dT, e2T, idx, sigma, pivmin):
    """Number of eigenvalues below ``sigma[p]`` of matrix ``idx[p]``.

    Counts negative pivots of the LDL^T factorization of ``T - sigma I``.
    """
    q = dT[0][idx] - sigma
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0).astype(np.int64)
    for i in range(1, dT.shape[0]):
        q = (dT[i][idx] - sigma) - e2T[i - 1][idx] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count


def sturm_count(diag, off, sigma):
    """Eigenvalues strictly below ``sigma`` for each matrix in the batch.

    ``sigma`` is a scalar or one shift per matrix.
    """
    d, e = _as_batch(diag, off)
    e2 = e * e
    sigma = np.broadcast_to(np.asarray(sigma, dtype=float), (d.shape[0],))
    idx = np.arange(d.shape[0])
    return _count(d.T.copy(), e2.T.copy(), idx, sigma, _pivmin(e2)[idx])


def _bisect(d, e2, idx, which, rtol):
    lo_b, hi_b = gershgorin_bounds(d, np.sqrt(e2))
    scale = np.maximum(np.abs(lo_b), np.abs(hi_b))
    tol = np.maximum(rtol * scale, _TINY)
    # per-matrix step counts keep each result independent of the batch
    steps = np.ceil(np.log2(np.maximum(hi_b - lo_b, tol) / tol)).astype(int) + 1
    pad = 2 * np.finfo(float).eps * scale + _TINY
    lo = (lo_b - pad)[idx]
    hi = (hi_b + pad)[idx]
    steps = steps[idx]
    dT, e2T = d.T.copy(), e2.T.copy()
    pivmin = _pivmin(e2)[idx]
    for it in range(int(steps.max()) if steps.size else 0):
        active = it < steps
        mid = 0.5 * (lo + hi)
        above = _count(dT, e2T, idx, mid, pivmin) > which
        hi = np.where(active & above, mid, hi)
        lo = np.where(active & ~above, mid, lo)
    return 0.5 * (lo + hi)


def eigvalsh_tridiagonal(diag, off, rtol: float = RTOL):
    """All eigenvalues, ascending, shape ``(B, N)`` (or ``(N,)`` for one matrix)."""
    single = np.asarray(diag).ndim == 1
    d, e = _as_batch(diag, off)
    B, N = d.shape
    idx = np.repeat(np.arange(B), N)
    which = np.tile(np.arange(N), B)
    vals = _bisect(d, e * e, idx, which, rtol).reshape(B, N)
    return vals[0] if single else vals


def eigvals_above(diag, off, cutoff, rtol: float = RTOL):
    """Eigenvalues ``>= cutoff`` of every matrix in the batch.

    Returns ``(values, matrix_index)`` as flat arrays, ascending within each
    matrix. Only the eigenvalues above the cutoff are bisected.
    """
    d, e = _as_batch(diag, off)
    B, N = d.shape
    below = sturm_count(d, e, cutoff)
    n_above = N - below
    idx = np.repeat(np.arange(B), n_above)
    starts = np.repeat(below - np.concatenate(([0], np.cumsum(n_above)[:-1])), n_above)
    which = np.arange(idx.size) + starts
    if idx.size == 0:
        return np.empty(0), idx
    return _bisect(d, e * e, idx, which, rtol), idx
