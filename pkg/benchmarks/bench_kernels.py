"""Timings of the numba kernels against the numpy/python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 200000]

The fallback is selected per call through TOEPL_DISABLE_NUMBA, so both
paths run in one process.  Each row also reports the largest difference
between the two results.
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np

from toeplitz_words import _kernels as K


def _timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def _both(fn, repeat):
    os.environ["TOEPL_DISABLE_NUMBA"] = "1"
    t_py, r_py = _timed(fn, repeat)
    os.environ["TOEPL_DISABLE_NUMBA"] = "0"
    fn()  # compile
    t_nb, r_nb = _timed(fn, repeat)
    return t_py, t_nb, r_py, r_nb


def _diff(a, b):
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(a))))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--size", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(args.seed)
    n = args.size
    word = rng.integers(0, 3, n)
    sa = K.suffix_array(word)
    E = rng.uniform(-2.5, 2.5, n)
    f = rng.uniform(0.5, 1.5, n + 1)
    steps = ((E - 0.3) / f[1:], -1.0 / f[1:], f[1:].copy(), np.zeros(n))
    energies = np.linspace(-3.0, 3.0, 512)
    gvals = rng.integers(0, 2, 4096).astype(float)

    cases = [
        ("lcp_array", lambda: K.lcp_array(word, sa)),
        ("ordered_product", lambda: np.array(K.ordered_product(*steps))),
        ("log_norm_series", lambda: K.log_norm_series(*steps)),
        ("schrodinger_traces", lambda: np.concatenate(K.schrodinger_traces(energies, gvals))),
    ]
    print(f"{'kernel':<20} {'fallback s':>11} {'numba s':>10} {'speedup':>8} {'max rel diff':>13}")
    for name, fn in cases:
        t_py, t_nb, r_py, r_nb = _both(fn, args.repeat)
        print(f"{name:<20} {t_py:11.4f} {t_nb:10.4f} {t_py / t_nb:8.1f} {_diff(r_py, r_nb):13.2e}")


if __name__ == "__main__":
    main()
