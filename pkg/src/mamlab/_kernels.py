"""Numeric hot kernels for the transverse-Kahler audits.

Two implementations of each kernel: a numba-compiled one and a pure-numpy
one.  Selection: MAMLAB_NO_NUMBA=1 (or numba missing) forces numpy; small
batches default to numpy anyway because JIT warm-up dwarfs the work.
`benchmarks/bench_kernels.py` compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np

_NUMBA_BATCH_THRESHOLD = 512


def _softmax(logits):
    mx = np.max(logits)
    w = np.exp(logits - mx)
    return w / np.sum(w)


def potential_np(B: np.ndarray, X: np.ndarray) -> np.ndarray:
    """log sum_I exp(<beta_I, x>) for each row x of X; B is (K, m)."""
    logits = X @ B.T  # (N, K)
    mx = np.max(logits, axis=1, keepdims=True)
    return (mx + np.log(np.sum(np.exp(logits - mx), axis=1, keepdims=True)))[:, 0]


def hessian_np(B: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Softmax covariance sum_I p_I beta_I beta_I^T - (mean)(mean)^T."""
    p = _softmax(B @ x)
    mean = p @ B
    return (B.T * p) @ B - np.outer(mean, mean)


def radial_batch_np(B: np.ndarray, X: np.ndarray, L: np.ndarray) -> np.ndarray:
    """Variance of <beta_I, lam> under softmax(<beta_I, x>), row-wise over
    matched rows of X (points, log-moduli) and L (directions)."""
    logits = X @ B.T  # (N, K)
    mx = np.max(logits, axis=1, keepdims=True)
    w = np.exp(logits - mx)
    p = w / np.sum(w, axis=1, keepdims=True)
    t = L @ B.T  # (N, K)
    mean = np.sum(p * t, axis=1)
    return np.sum(p * t * t, axis=1) - mean * mean


try:  # pragma: no cover - environment dependent
    if os.environ.get("MAMLAB_NO_NUMBA") == "1":
        raise ImportError("disabled by MAMLAB_NO_NUMBA")
    from numba import njit

    @njit(cache=True)
    def _potential_nb(B, X):
        N, K = X.shape[0], B.shape[0]
        out = np.empty(N)
        for i in range(N):
            mx = -1e308
            for k in range(K):
                v = 0.0
                for j in range(B.shape[1]):
                    v += B[k, j] * X[i, j]
                if v > mx:
                    mx = v
            s = 0.0
            for k in range(K):
                v = 0.0
                for j in range(B.shape[1]):
                    v += B[k, j] * X[i, j]
                s += np.exp(v - mx)
            out[i] = mx + np.log(s)
        return out

    @njit(cache=True)
    def _hessian_nb(B, x):
        K, m = B.shape
        logits = B @ x
        mx = logits.max()
        w = np.exp(logits - mx)
        p = w / w.sum()
        mean = np.zeros(m)
        for k in range(K):
            for j in range(m):
                mean[j] += p[k] * B[k, j]
        H = np.zeros((m, m))
        for k in range(K):
            for a in range(m):
                for b in range(m):
                    H[a, b] += p[k] * B[k, a] * B[k, b]
        for a in range(m):
            for b in range(m):
                H[a, b] -= mean[a] * mean[b]
        return H

    @njit(cache=True)
    def _radial_batch_nb(B, X, L):
        N, K = X.shape[0], B.shape[0]
        out = np.empty(N)
        for i in range(N):
            mx = -1e308
            for k in range(K):
                v = 0.0
                for j in range(B.shape[1]):
                    v += B[k, j] * X[i, j]
                if v > mx:
                    mx = v
            s = 0.0
            m1 = 0.0
            m2 = 0.0
            for k in range(K):
                v = 0.0
                t = 0.0
                for j in range(B.shape[1]):
                    v += B[k, j] * X[i, j]
                    t += B[k, j] * L[i, j]
                w = np.exp(v - mx)
                s += w
                m1 += w * t
                m2 += w * t * t
            m1 /= s
            m2 /= s
            out[i] = m2 - m1 * m1
        return out

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False
    _potential_nb = _hessian_nb = _radial_batch_nb = None


def _use_numba(batch: int) -> bool:
    return HAVE_NUMBA and batch >= _NUMBA_BATCH_THRESHOLD


def potential_batch(B, X):
    B = np.asarray(B, dtype=float)
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if _use_numba(X.shape[0]):
        return _potential_nb(B, X)
    return potential_np(B, X)


def hessian(B, x):
    B = np.asarray(B, dtype=float)
    x = np.asarray(x, dtype=float)
    if _use_numba(1):
        return _hessian_nb(B, x)
    return hessian_np(B, x)


def radial_batch(B, X, L):
    B = np.asarray(B, dtype=float)
    X = np.atleast_2d(np.asarray(X, dtype=float))
    L = np.atleast_2d(np.asarray(L, dtype=float))
    if _use_numba(X.shape[0]):
        return _radial_batch_nb(B, X, L)
    return radial_batch_np(B, X, L)
