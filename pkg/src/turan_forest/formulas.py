"""Closed-form Turán numbers for paths, stars and path-star forests.

Path orders are always the number of vertices of the path.  Where a
result is stated for ``P_(2h)`` its threshold is written in terms of the
half order ``h`` internally; callers pass the path order ``L = 2h``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import _scan
from .constructions import (
    ExtremalDescriptor,
    clique_plus_ex_path,
    decompose,
    faudree_extremal_set,
    g1,
    g2,
    g3,
)

PROVEN = "PROVEN"
OUTSIDE_RANGE = "OUTSIDE_RANGE"
CONJECTURED = "CONJECTURED"


@dataclass(frozen=True)
class FormulaResult:
    value: int
    applicable: str
    threshold: int | None
    extremal: tuple[ExtremalDescriptor, ...] = ()
    note: str = ""

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "applicable": self.applicable,
            "threshold": self.threshold,
            "extremal": [d.to_json() for d in self.extremal],
            "note": self.note,
        }


def bracket_path(n: int, m: int, l: int) -> int:
    """[n, m, l] = C(m-1, 2) + d C(l-1, 2) + C(r, 2), n = (m-1) + d(l-1) + r."""
    if not n >= m >= l >= 2:
        raise ValueError(f"[n, m, l] needs n >= m >= l >= 2, got ({n}, {m}, {l})")
    dr = decompose(n, m - 1, l)
    return comb(m - 1, 2) + dr.d * comb(l - 1, 2) + comb(dr.r, 2)


def bracket_star(n: int, s: int) -> int:
    """[n, s] = C(s-1, 2) + (s-1)(n-s+1): edges of K_(s-1) v Kbar_(n-s+1)."""
    if not n >= s >= 1:
        raise ValueError(f"[n, s] needs n >= s >= 1, got ({n}, {s})")
    return comb(s - 1, 2) + (s - 1) * (n - s + 1)


def ex_path(n: int, l: int) -> FormulaResult:
    """ex(n, P_l) with all extremal graphs; C(n, 2) when n < l."""
    if l < 2:
        raise ValueError(f"path order must be >= 2, got {l}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    value = comb(n, 2) if n < l else bracket_path(n, l, l)
    return FormulaResult(value, PROVEN, 1, tuple(faudree_extremal_set(n, l)))


def ex_two_p5(n: int) -> FormulaResult:
    """ex(n, 2P_5) = max([n, 10, 5], 3n - 5) for n >= 10."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n < 10:
        return FormulaResult(comb(n, 2), OUTSIDE_RANGE, 10, (), "K_n is 2P5-free below 10 vertices")
    a, b = bracket_path(n, 10, 5), 3 * n - 5
    value = max(a, b)
    ext: list[ExtremalDescriptor] = []
    if a == value:
        ext += clique_plus_ex_path(n, 2, 5)
    if b == value:
        ext.append(g3(n, 0))
    return FormulaResult(value, PROVEN, 10, tuple(ext))


def even_paths_threshold(k: int, L: int) -> int:
    """n from which [n, Lk, L] < [n, Lk/2] is claimed: (2h^2 + 3h - 4)k + 3, h = L/2."""
    h = L // 2
    return (2 * h * h + 3 * h - 4) * k + 3


def ex_k_even_paths(n: int, k: int, L: int) -> FormulaResult:
    """ex(n, kP_L) = max([n, Lk, L], [n, Lk/2]) for even L, k >= 2, n >= Lk.

    ``threshold`` carries the bound above which only the K_(Lk/2-1) v Kbar
    family is claimed extremal; the value itself is valid from n = Lk.
    """
    if L < 2 or L % 2:
        raise ValueError(f"path order must be even and >= 2, got {L}")
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if n < L * k:
        raise ValueError(f"need n >= Lk = {L * k}, got {n}")
    a, b = bracket_path(n, L * k, L), bracket_star(n, L * k // 2)
    value = max(a, b)
    ext: list[ExtremalDescriptor] = []
    if a == value:
        ext += clique_plus_ex_path(n, k, L)
    if b == value:
        ext.append(g2(n, k, 0, L))
    return FormulaResult(value, PROVEN, even_paths_threshold(k, L), tuple(ext))


def ex_k_stars(n: int, k: int, l: int) -> FormulaResult:
    """ex(n, kS_l), S_l the star with l leaves.

    k >= 2: the four-regime formula (breakpoints k(l+1), (k+1)l + k - 1 and
    (kl^2 + 2kl + 2k - 2)/2).  k = 1: graphs of maximum degree < l, giving
    floor((l-1)n/2) once n >= l + 1.
    """
    if l < 3:
        raise ValueError(f"need l >= 3 leaves, got {l}")
    if k < 1 or n < 1:
        raise ValueError(f"need k >= 1 and n >= 1, got k={k}, n={n}")
    if k == 1:
        if n < l + 1:
            return FormulaResult(comb(n, 2), PROVEN, l + 1, (), "fewer than l+1 vertices")
        return FormulaResult((l - 1) * n // 2, PROVEN, l + 1, (), "(l-1)-regular or near-regular graphs")
    big = k * l + k - 1
    if n < k * (l + 1):
        value, regime = comb(n, 2), 1
    elif n <= (k + 1) * l + k - 1:
        value, regime = comb(big, 2) + comb(n - big, 2), 2
    elif 2 * n < k * l * l + 2 * k * l + 2 * k - 2:
        value, regime = comb(big, 2) + (l - 1) * (n - big) // 2, 3
    else:
        value, regime = comb(k - 1, 2) + (n - k + 1) * (k - 1) + (l - 1) * (n - k + 1) // 2, 4
    return FormulaResult(value, PROVEN, 1, (), f"regime {regime}")


def path_star_thresholds(k1: int, k2: int, L: int) -> dict[str, int]:
    """Thresholds of the three main results that could apply to (k1, k2, L)."""
    out = {}
    if k1 == 1 and L >= 4:
        out["single_path"] = (L * L - L + 1) * k2 + (L * L + 3 * L - 2) // 2
    if k1 >= 2 and L % 2 == 0 and L >= 4:
        h = L // 2
        out["even_paths"] = (2 * h * h + 3 * h - 4) * k1 + (4 * h * h - 2 * h + 1) * k2 + 3
    if k1 == 2 and L == 5:
        out["two_p5"] = 21 * k2 + 38
    return out


def _try(fn, *args):
    try:
        return fn(*args)
    except ValueError:
        return None


def ex_path_star(n: int, k1: int, k2: int, L: int) -> FormulaResult:
    """ex(n, k1 P_L + k2 S_(L-1)), dispatched to the strongest applicable result."""
    if k1 < 1 or k2 < 0 or L < 2 or n < 1:
        raise ValueError(f"need k1 >= 1, k2 >= 0, L >= 2, n >= 1; got ({n}, {k1}, {k2}, {L})")
    if k1 == 1 and k2 == 0:
        return ex_path(n, L)
    th = path_star_thresholds(k1, k2, L)

    if "single_path" in th and n >= th["single_path"]:
        d1 = g1(n, k2, L)
        ext = [d1]
        r = decompose(n, k2, L).r
        if L % 2 == 0 and r in (L // 2, (L - 2) // 2):
            ext.append(g2(n, 1, k2, L))
        return FormulaResult(d1.expr.size, PROVEN, th["single_path"], tuple(ext))
    if "even_paths" in th and n >= th["even_paths"]:
        d2 = g2(n, k1, k2, L)
        return FormulaResult(d2.expr.size, PROVEN, th["even_paths"], (d2,))
    if "two_p5" in th and n >= th["two_p5"]:
        d3 = g3(n, k2)
        return FormulaResult(d3.expr.size, PROVEN, th["two_p5"], (d3,))

    threshold = min(th.values()) if th else None
    cands = [d for d in (_try(g1, n, k2, L), _try(g2, n, k1, k2, L) if L % 2 == 0 else None) if d]
    if L % 2 == 0 and L >= 4 and len(cands) == 2:
        value = max(d.expr.size for d in cands)
        ext = tuple(d for d in cands if d.expr.size == value)
        return FormulaResult(value, CONJECTURED, threshold, ext, "max of the two constructions")

    # Best lower bound we can certify: K_n when the forest does not fit,
    # else the largest construction known to be free.
    if n < (k1 + k2) * L:
        return FormulaResult(comb(n, 2), OUTSIDE_RANGE, threshold, (), "forest larger than n")
    if k1 == 2 and L == 5:
        cands.append(_try(g3, n, k2))
    sizes = [d.expr.size for d in cands if d]
    return FormulaResult(max(sizes, default=0), OUTSIDE_RANGE, threshold, (), "construction lower bound")


# --------------------------------------------------------------------------
# crossover scan

_CODES = {
    "const": (_scan.CONST, 1),
    "linear": (_scan.LINEAR, 2),
    "bracket_path": (_scan.BRACKET_PATH, 2),
    "bracket_star": (_scan.BRACKET_STAR, 1),
}


def parse_formula_id(text: str) -> tuple[int, int, int]:
    """``bracket_path:m,l`` | ``bracket_star:s`` | ``linear:a,b`` | ``const:c`` | ``n``."""
    text = text.strip()
    if text == "n":
        return (_scan.LINEAR, 1, 0)
    name, _, args = text.partition(":")
    if name not in _CODES:
        raise ValueError(f"unknown formula {text!r}")
    code, arity = _CODES[name]
    try:
        vals = [int(a) for a in args.split(",")] if args else []
    except ValueError:
        raise ValueError(f"formula arguments must be integers: {text!r}") from None
    if len(vals) != arity:
        raise ValueError(f"{name} takes {arity} arguments, got {len(vals)}")
    if code == _scan.BRACKET_PATH and not vals[0] >= vals[1] >= 2:
        raise ValueError(f"bracket_path needs m >= l >= 2: {text!r}")
    if code == _scan.BRACKET_STAR and vals[0] < 1:
        raise ValueError(f"bracket_star needs s >= 1: {text!r}")
    return (code, vals[0], vals[1] if arity == 2 else 0)


def _domain_start(f: tuple[int, int, int]) -> int:
    if f[0] in (_scan.BRACKET_PATH, _scan.BRACKET_STAR):
        return f[1]
    return -(1 << 62)


@dataclass(frozen=True)
class CrossoverResult:
    f: str
    g: str
    lo: int
    hi: int  # inclusive
    stabilization: int | None  # smallest N with f < g on all of [N, hi]
    threshold: int | None
    sufficient: bool | None  # f < g everywhere on [max(threshold, lo), hi]
    slack: int | None  # threshold - stabilization
    trace: list[tuple[int, int, int]] | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        out = {k: getattr(self, k) for k in
               ("f", "g", "lo", "hi", "stabilization", "threshold", "sufficient", "slack")}
        if self.trace is not None:
            out["trace"] = [list(t) for t in self.trace]
        return out


def _chunk_last(args) -> int | None:
    """Largest violating n in the chunk, None when the chunk is clean."""
    f, g, a, b = args
    last = _scan.last_violation(f, g, a, b)
    return last if last >= a else None


def crossover_scan(f_id: str, g_id: str, lo: int, hi: int, threshold: int | None = None,
                   trace: bool = False, chunk: int = 1 << 20, jobs: int = 1) -> CrossoverResult:
    """Find where f < g holds from some point on, over n in [lo, hi].

    The range is split into chunks (optionally over ``jobs`` processes);
    only the largest violating n matters, so the result does not depend on
    the partition.
    """
    f, g = parse_formula_id(f_id), parse_formula_id(g_id)
    if hi < lo:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if lo < max(_domain_start(f), _domain_start(g)):
        raise ValueError(f"scan must start at n >= {max(_domain_start(f), _domain_start(g))}")
    if chunk < 1:
        raise ValueError("chunk must be positive")
    pieces = [(f, g, a, min(a + chunk, hi + 1)) for a in range(lo, hi + 1, chunk)]
    if jobs > 1 and len(pieces) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            lasts = list(pool.map(_chunk_last, pieces))
    else:
        lasts = [_chunk_last(p) for p in pieces]
    last = max((x for x in lasts if x is not None), default=lo - 1)
    stab = None if last >= hi else max(last + 1, lo)
    sufficient = slack = None
    if threshold is not None:
        sufficient = last < max(threshold, lo)
        if stab is not None:
            slack = threshold - stab
    rows = None
    if trace:
        ns = np.arange(lo, hi + 1, dtype=np.int64)
        fv, gv = _scan.evaluate(f, ns), _scan.evaluate(g, ns)
        rows = [(int(a), int(b), int(c)) for a, b, c in zip(ns, fv, gv)]
    return CrossoverResult(f_id, g_id, lo, hi, stab, threshold, sufficient, slack, rows)


def even_paths_scan(k: int, L: int, hi: int, **kw) -> CrossoverResult:
    """[n, Lk, L] vs [n, Lk/2] over [Lk, hi], judged from the claimed threshold."""
    th = even_paths_threshold(k, L)
    return crossover_scan(f"bracket_path:{L * k},{L}", f"bracket_star:{L * k // 2}", L * k, hi, th, **kw)
