"""Crossover scan kernels: last n in [lo, hi) where f(n) < g(n) fails.

A formula is encoded as ``(code, p0, p1)``:

* ``CONST``        c                      -> p0
* ``LINEAR``       a*n + b                -> p0, p1
* ``BRACKET_PATH`` [n, m, l]              -> p0 = m, p1 = l
* ``BRACKET_STAR`` [n, s]                 -> p0 = s

Values stay far below 2**63 for n <= 10**9 and the parameter sizes used
here, so int64 is exact.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

CONST = 0
LINEAR = 1
BRACKET_PATH = 2
BRACKET_STAR = 3


@njit
def _eval(code, p0, p1, n):
    if code == CONST:
        return p0
    if code == LINEAR:
        return p0 * n + p1
    if code == BRACKET_PATH:
        d = (n - (p0 - 1)) // (p1 - 1)
        r = (n - (p0 - 1)) - d * (p1 - 1)
        return (p0 - 1) * (p0 - 2) // 2 + d * ((p1 - 1) * (p1 - 2) // 2) + r * (r - 1) // 2
    # BRACKET_STAR
    return (p0 - 1) * (p0 - 2) // 2 + (p0 - 1) * (n - p0 + 1)


@njit
def _last_violation_loop(f, g, lo, hi):
    last = lo - 1
    for n in range(lo, hi):
        if not _eval(f[0], f[1], f[2], n) < _eval(g[0], g[1], g[2], n):
            last = n
    return last


def _eval_np(code, p0, p1, n):
    if code == CONST:
        return np.full(n.shape, p0, np.int64)
    if code == LINEAR:
        return p0 * n + p1
    if code == BRACKET_PATH:
        d, r = np.divmod(n - (p0 - 1), p1 - 1)
        return (p0 - 1) * (p0 - 2) // 2 + d * ((p1 - 1) * (p1 - 2) // 2) + r * (r - 1) // 2
    return (p0 - 1) * (p0 - 2) // 2 + (p0 - 1) * (n - p0 + 1)


def _last_violation_np(f, g, lo, hi):
    n = np.arange(lo, hi, dtype=np.int64)
    bad = np.flatnonzero(_eval_np(*f, n) >= _eval_np(*g, n))
    return int(n[bad[-1]]) if bad.size else lo - 1


def last_violation(f, g, lo, hi):
    """Largest n in [lo, hi) with f(n) >= g(n), or lo - 1 if none."""
    if hi <= lo:
        return lo - 1
    if USE_NUMBA:
        return int(_last_violation_loop(np.asarray(f, np.int64), np.asarray(g, np.int64), lo, hi))
    return _last_violation_np(tuple(int(x) for x in f), tuple(int(x) for x in g), lo, hi)


def evaluate(f, n):
    """Vectorized values of one encoded formula on an int64 array."""
    return _eval_np(int(f[0]), int(f[1]), int(f[2]), np.asarray(n, np.int64))
