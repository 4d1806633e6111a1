"""Hot loops with a numba path and a pure numpy/python fallback.

Set ``TOEPL_DISABLE_NUMBA=1`` to force the fallback; both paths return
identical results (the float kernels agree to rounding).
"""

from __future__ import annotations

import math
import os
import warnings

import numpy as np

RENORM_EVERY = 64


class AccelWarning(RuntimeWarning):
    pass


def _numba_wanted() -> bool:
    return os.environ.get("TOEPL_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes", "on")


try:  # pragma: no cover - depends on the environment
    import numba as _numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _numba = None
    HAVE_NUMBA = False


def _maybe_jit(fn):
    if HAVE_NUMBA:
        return _numba.njit(cache=False, nogil=True)(fn)
    return fn


def use_numba() -> bool:
    if not _numba_wanted():
        return False
    if not HAVE_NUMBA:
        warnings.warn("numba is not installed; using the numpy fallback", AccelWarning, stacklevel=3)
        return False
    return True


# ---------------------------------------------------------------------------
# LCP array (Kasai)


def _kasai_py(s, sa, rank):
    n = len(s)
    lcp = np.zeros(n, dtype=np.int64)
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and s[i + h] == s[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1
    return lcp


_kasai_jit = _maybe_jit(_kasai_py)


def lcp_array(s: np.ndarray, sa: np.ndarray) -> np.ndarray:
    """lcp[i] = common prefix length of suffixes sa[i-1] and sa[i]; lcp[0] = 0."""
    s = np.ascontiguousarray(s, dtype=np.int64)
    sa = np.ascontiguousarray(sa, dtype=np.int64)
    rank = np.empty_like(sa)
    rank[sa] = np.arange(sa.size, dtype=np.int64)
    if use_numba():
        return _kasai_jit(s, sa, rank)
    # the python loop is fine at the sizes used by the fallback
    return _kasai_py(s.tolist(), sa.tolist(), rank.tolist()) if s.size else np.zeros(0, dtype=np.int64)


def suffix_array(s: np.ndarray) -> np.ndarray:
    """Prefix doubling with numpy sorts, O(n log^2 n)."""
    s = np.asarray(s, dtype=np.int64)
    n = s.size
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    _, rank = np.unique(s, return_inverse=True)
    rank = rank.astype(np.int64)
    k = 1
    sa = np.argsort(rank, kind="stable")
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:] if k < n else second[:0]
        sa = np.lexsort((second, rank))
        r1 = rank[sa]
        r2 = second[sa]
        diff = np.empty(n, dtype=bool)
        diff[0] = False
        diff[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        new = np.empty(n, dtype=np.int64)
        new[sa] = np.cumsum(diff)
        rank = new
        if rank.max() == n - 1:
            return sa
        k *= 2
        if k >= n:
            return sa


# ---------------------------------------------------------------------------
# 2x2 cocycle products


def _product_py(m11, m12, m21, m22, renorm):
    """Left-multiplies the step matrices in order; returns the scaled
    product and the accumulated log scale."""
    a, b, c, d = 1.0, 0.0, 0.0, 1.0
    logscale = 0.0
    for i in range(m11.shape[0]):
        na = m11[i] * a + m12[i] * c
        nb = m11[i] * b + m12[i] * d
        nc = m21[i] * a + m22[i] * c
        nd = m21[i] * b + m22[i] * d
        a, b, c, d = na, nb, nc, nd
        if (i + 1) % renorm == 0:
            s = max(abs(a), abs(b), abs(c), abs(d))
            if s > 0.0:
                a /= s
                b /= s
                c /= s
                d /= s
                logscale += math.log(s)
    return a, b, c, d, logscale


_product_jit = _maybe_jit(_product_py)


def ordered_product(m11, m12, m21, m22, renorm: int = RENORM_EVERY):
    if use_numba():
        return _product_jit(
            np.ascontiguousarray(m11, np.float64),
            np.ascontiguousarray(m12, np.float64),
            np.ascontiguousarray(m21, np.float64),
            np.ascontiguousarray(m22, np.float64),
            renorm,
        )
    return _product_py(np.asarray(m11, float), np.asarray(m12, float), np.asarray(m21, float), np.asarray(m22, float), renorm)


def _norm2(a, b, c, d):
    s = a * a + b * b + c * c + d * d
    det = a * d - b * c
    disc = s * s - 4.0 * det * det
    if disc < 0.0:
        disc = 0.0
    return math.sqrt(0.5 * (s + math.sqrt(disc)))


_norm2_jit = _maybe_jit(_norm2)


def _log_norm_series_py(m11, m12, m21, m22, renorm):
    """ln||A_j|| for every prefix product A_j = M_j ... M_1."""
    n = m11.shape[0]
    out = np.empty(n, dtype=np.float64)
    a, b, c, d = 1.0, 0.0, 0.0, 1.0
    logscale = 0.0
    for i in range(n):
        na = m11[i] * a + m12[i] * c
        nb = m11[i] * b + m12[i] * d
        nc = m21[i] * a + m22[i] * c
        nd = m21[i] * b + m22[i] * d
        a, b, c, d = na, nb, nc, nd
        s = a * a + b * b + c * c + d * d
        det = a * d - b * c
        disc = s * s - 4.0 * det * det
        if disc < 0.0:
            disc = 0.0
        out[i] = logscale + 0.5 * math.log(0.5 * (s + math.sqrt(disc)))
        if (i + 1) % renorm == 0:
            sc = max(abs(a), abs(b), abs(c), abs(d))
            if sc > 0.0:
                a /= sc
                b /= sc
                c /= sc
                d /= sc
                logscale += math.log(sc)
    return out


_log_norm_series_jit = _maybe_jit(_log_norm_series_py)


def log_norm_series(m11, m12, m21, m22, renorm: int = RENORM_EVERY) -> np.ndarray:
    args = [np.ascontiguousarray(x, np.float64) for x in (m11, m12, m21, m22)]
    if use_numba():
        return _log_norm_series_jit(*args, renorm)
    return _log_norm_series_py(*args, renorm)


def _traces_py(energies, gvals, renorm):
    """Trace of prod_j [[E - g_j, -1], [1, 0]] for every E (Schrodinger).

    Returns the trace of the rescaled product and the natural-log scale,
    so the true trace is ``tr * exp(logscale)`` even when that overflows.
    """
    n = energies.shape[0]
    tr = np.empty(n, dtype=np.float64)
    ls = np.zeros(n, dtype=np.float64)
    for e in range(n):
        E = energies[e]
        a, b, c, d = 1.0, 0.0, 0.0, 1.0
        logscale = 0.0
        for j in range(gvals.shape[0]):
            t = E - gvals[j]
            na = t * a - c
            nb = t * b - d
            a, b, c, d = na, nb, a, b
            if (j + 1) % renorm == 0:
                sc = max(abs(a), abs(b), abs(c), abs(d))
                if sc > 1e32:
                    a /= sc
                    b /= sc
                    c /= sc
                    d /= sc
                    logscale += math.log(sc)
        tr[e] = a + d
        ls[e] = logscale
    return tr, ls


_traces_jit = _maybe_jit(_traces_py)


def _traces_np(energies, gvals, renorm):
    a = np.ones_like(energies)
    b = np.zeros_like(energies)
    c = np.zeros_like(energies)
    d = np.ones_like(energies)
    ls = np.zeros_like(energies)
    for j, g in enumerate(gvals):
        t = energies - g
        a, b, c, d = t * a - c, t * b - d, a, b
        if (j + 1) % renorm == 0:
            sc = np.maximum(np.maximum(np.abs(a), np.abs(b)), np.maximum(np.abs(c), np.abs(d)))
            big = sc > 1e32
            if big.any():
                sc = np.where(big, sc, 1.0)
                a, b, c, d = a / sc, b / sc, c / sc, d / sc
                ls += np.log(sc)
    return a + d, ls


def schrodinger_traces(energies, gvals, renorm: int = RENORM_EVERY):
    """(scaled trace, log scale) per energy."""
    energies = np.ascontiguousarray(energies, np.float64)
    gvals = np.ascontiguousarray(gvals, np.float64)
    if use_numba():
        return _traces_jit(energies, gvals, renorm)
    return _traces_np(energies, gvals, renorm)
