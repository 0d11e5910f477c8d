"""Extremal graph families and their closed-form edge counts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .graph import (
    Complete,
    ConstructionExpr,
    Copies,
    EmptyGraph,
    Join,
    Union,
    build,
    copy_blocks,
)

G1 = "G1"
G2 = "G2"
G3 = "G3"
H = "H"
ERDOS_GALLAI = "ERDOS_GALLAI"
FAUDREE_CLIQUES = "FAUDREE_CLIQUES"
FAUDREE_S_FAMILY = "FAUDREE_S_FAMILY"
K9_PLUS_EX_P5 = "K9_PLUS_EX_P5"
CLIQUE_PLUS_EX_PATH = "CLIQUE_PLUS_EX_PATH"

CLOSED_FORM = (G1, G2, G3)


class NoClosedForm(ValueError):
    """The descriptor's edge count is only available by building it."""


@dataclass(frozen=True)
class DecompositionParams:
    d: int
    r: int


def decompose(n: int, base: int, l: int) -> DecompositionParams:
    """The unique d >= 0, 0 <= r < l-1 with n = base + d(l-1) + r."""
    if l < 2:
        raise ValueError(f"need l >= 2, got {l}")
    if n < base:
        raise ValueError(f"n = {n} is below the base {base}")
    d, r = divmod(n - base, l - 1)
    return DecompositionParams(d, r)


@dataclass(frozen=True)
class ExtremalDescriptor:
    name: str
    params: tuple[tuple[str, int], ...]
    expr: ConstructionExpr

    @property
    def n(self) -> int:
        return self.expr.order

    def param(self, key: str) -> int:
        return dict(self.params)[key]

    def build(self):
        return build(self.expr)

    def symmetry(self):
        return copy_blocks(self.expr)

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "params": dict(self.params), "edges": self.expr.size, "expr": str(self.expr)}

    def __str__(self) -> str:
        args = ",".join(str(v) for _, v in self.params)
        return f"{self.name}({args}) = {self.expr}"


def _desc(name: str, expr: ConstructionExpr, **params: int) -> ExtremalDescriptor:
    return ExtremalDescriptor(name, tuple(params.items()), expr)


def _exact_div(num: int, den: int) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"{num} is not divisible by {den}")
    return q


def g1(n: int, k: int, l: int) -> ExtremalDescriptor:
    """K_k v (d K_(l-1) + K_r) with n - k = d(l-1) + r."""
    if l < 2:
        raise ValueError(f"need l >= 2, got {l}")
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got k={k}, n={n}")
    dr = decompose(n, k, l)
    rest = Union([Copies(dr.d, Complete(l - 1)), Complete(dr.r)])
    return _desc(G1, Join(Complete(k), rest), n=n, k=k, l=l)


def g2(n: int, k1: int, k2: int, L: int) -> ExtremalDescriptor:
    """K_(h k1 + k2 - 1) v Kbar_(n - h k1 - k2 + 1) where L = 2h is the path order."""
    if L < 2 or L % 2:
        raise ValueError(f"G2 needs an even path order L >= 2, got {L}")
    if k1 < 0 or k2 < 0:
        raise ValueError("k1 and k2 must be nonnegative")
    hub = L // 2 * k1 + k2 - 1
    if hub < 1:
        raise ValueError(f"G2 needs (L/2)k1 + k2 - 1 >= 1, got {hub}")
    if n <= hub:
        raise ValueError(f"G2 needs n > {hub}, got {n}")
    return _desc(G2, Join(Complete(hub), EmptyGraph(n - hub)), n=n, k1=k1, k2=k2, L=L)


def g3(n: int, k: int) -> ExtremalDescriptor:
    """K_(k+3) v (K_2 + Kbar_(n-k-5))."""
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    if n < k + 6:
        raise ValueError(f"G3 needs n >= k + 6 = {k + 6}, got {n}")
    return _desc(G3, Join(Complete(k + 3), Union([Complete(2), EmptyGraph(n - k - 5)])), n=n, k=k)


def h_family(n: int, k: int, l: int, s: int) -> ExtremalDescriptor:
    """K_k v ((d-s-1) K_(l-1) + (K_((l-2)/2) v Kbar_(l/2 + s(l-1) + r)))."""
    if l < 4 or l % 2:
        raise ValueError(f"H needs an even l >= 4, got {l}")
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    dr = decompose(n, k, l)
    if not 0 <= s <= dr.d - 1:
        raise ValueError(f"need 0 <= s <= d-1 = {dr.d - 1}, got s={s}")
    tail = Join(Complete((l - 2) // 2), EmptyGraph(l // 2 + s * (l - 1) + dr.r))
    body = Union([Copies(dr.d - s - 1, Complete(l - 1)), tail])
    return _desc(H, Join(Complete(k), body), n=n, k=k, l=l, s=s)


def faudree_extremal_set(n: int, l: int) -> list[ExtremalDescriptor]:
    """All extremal graphs for P_l on n vertices, n = d(l-1) + r.

    Always dK_(l-1) + K_r; for even l with r in {l/2, (l-2)/2} also the
    family (d-s-1)K_(l-1) + (K_((l-2)/2) v Kbar_(l/2 + s(l-1) + r)),
    s = 0..d-1.  Members may coincide up to isomorphism (l = 2).
    """
    if l < 2:
        raise ValueError(f"need l >= 2, got {l}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    dr = decompose(n, 0, l)
    d, r = dr.d, dr.r
    base = Union([Copies(d, Complete(l - 1)), Complete(r)])
    out = [_desc(ERDOS_GALLAI if r == 0 else FAUDREE_CLIQUES, base, n=n, l=l)]
    if l % 2 == 0 and r in (l // 2, (l - 2) // 2):
        for s in range(d):
            tail = Join(Complete((l - 2) // 2), EmptyGraph(l // 2 + s * (l - 1) + r))
            expr = Union([Copies(d - s - 1, Complete(l - 1)), tail])
            out.append(_desc(FAUDREE_S_FAMILY, expr, n=n, l=l, s=s))
    return out


def clique_plus_ex_path(n: int, k: int, l: int) -> list[ExtremalDescriptor]:
    """K_(lk-1) + EX(n - lk + 1, P_l), one descriptor per extremal P_l graph."""
    base = l * k - 1
    if n < base + 1:
        raise ValueError(f"need n >= {base + 1}, got {n}")
    name = K9_PLUS_EX_P5 if (k, l) == (2, 5) else CLIQUE_PLUS_EX_PATH
    out = []
    for i, sub in enumerate(faudree_extremal_set(n - base, l)):
        out.append(_desc(name, Union([Complete(base), sub.expr]), n=n, k=k, l=l, member=i))
    return out


def edge_formula(desc: ExtremalDescriptor) -> int:
    """Closed-form edge count of a G1, G2 or G3 descriptor (exact integer)."""
    p = dict(desc.params)
    if desc.name == G1:
        n, k, l = p["n"], p["k"], p["l"]
        r = decompose(n, k, l).r
        return _exact_div((2 * k + l - 2) * n - (k * k + (l - 1) * (k + r) - r * r), 2)
    if desc.name == G2:
        n, k1, k2, L = p["n"], p["k1"], p["k2"], p["L"]
        a = L // 2 * k1 + k2
        return (a - 1) * n - _exact_div(a * (a - 1), 2)
    if desc.name == G3:
        n, k = p["n"], p["k"]
        return (k + 3) * n - _exact_div(k * k + 7 * k + 10, 2)
    raise NoClosedForm(f"{desc.name} has no closed-form edge count; build it instead")


def edge_gap(n: int, k: int, l: int) -> int:
    """e(G1(n,k,l)) - e(G2(n,1,k,l)) predicted as (l-2r)(l-2r-2)/8."""
    if l % 2:
        raise ValueError("the gap identity needs an even l")
    r = decompose(n, k, l).r
    return _exact_div((l - 2 * r) * (l - 2 * r - 2), 8)


_INLINE = {
    "g1": (g1, 3),
    "g2": (g2, 4),
    "g3": (g3, 2),
    "h": (h_family, 4),
}


def parse_construction(text: str) -> ExtremalDescriptor:
    """``g1:n,k,l`` | ``g2:n,k1,k2,L`` | ``g3:n,k`` | ``h:n,k,l,s``."""
    name, sep, args = text.strip().partition(":")
    key = name.strip().lower()
    if not sep or key not in _INLINE:
        raise ValueError(f"unknown construction {text!r}; expected one of g1:, g2:, g3:, h:")
    fn, arity = _INLINE[key]
    try:
        vals = [int(a) for a in args.split(",")]
    except ValueError:
        raise ValueError(f"construction arguments must be integers: {args!r}") from None
    if len(vals) != arity:
        raise ValueError(f"{key} takes {arity} arguments, got {len(vals)}")
    return fn(*vals)
