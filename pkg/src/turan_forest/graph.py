"""Simple graphs as bitmask rows, symbolic constructions, graph6 I/O.

Row ``rows[v]`` is a Python int whose bit ``u`` is set iff ``uv`` is an
edge.  Python ints have no width limit, so the same type serves the small
oracle graphs and the ~100-vertex constructions; the numba kernels take a
dense ``uint8`` adjacency matrix instead (see :attr:`Graph.adjacency`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union as _U

import numpy as np

from . import _canon

CANONICAL_MAX_ORDER = 10
GRAPH6_HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 input."""


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise ValueError(f"row {v} has bits outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            rest = row
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
                rest ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_adjacency(cls, adj) -> "Graph":
        adj = np.asarray(adj)
        n = adj.shape[0]
        rows = []
        for v in range(n):
            row = 0
            for u in np.flatnonzero(adj[v]):
                row |= 1 << int(u)
            rows.append(row)
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        row, out = self.rows[v], []
        while row:
            low = row & -row
            out.append(low.bit_length() - 1)
            row ^= low
        return out

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            for u in self.neighbors(v):
                if u > v:
                    yield v, u

    @cached_property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    @cached_property
    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges():
            adj[u, v] = adj[v, u] = 1
        adj.setflags(write=False)
        return adj

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm is not a permutation of the vertex set")
        rows = [0] * self.n
        for v in range(self.n):
            for u in self.neighbors(v):
                rows[perm[v]] |= 1 << perm[u]
        return Graph(self.n, tuple(rows))

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ValueError("loops are not allowed")
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def induced(self, keep: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(keep)}
        return Graph.from_edges(
            len(keep), ((index[u], index[v]) for u, v in self.edges() if u in index and v in index)
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.edge_count}, g6={graph6_encode(self)!r})"


def edge_count(g: Graph) -> int:
    return g.edge_count


# --------------------------------------------------------------------------
# construction expressions


@dataclass(frozen=True)
class Complete:
    a: int

    def __post_init__(self):
        if self.a < 0:
            raise ValueError("negative clique order")

    @property
    def order(self) -> int:
        return self.a

    @property
    def size(self) -> int:
        return self.a * (self.a - 1) // 2

    def __str__(self) -> str:
        return f"K{self.a}"


@dataclass(frozen=True)
class EmptyGraph:
    a: int

    def __post_init__(self):
        if self.a < 0:
            raise ValueError("negative order")

    @property
    def order(self) -> int:
        return self.a

    @property
    def size(self) -> int:
        return 0

    def __str__(self) -> str:
        return f"Kbar{self.a}"


@dataclass(frozen=True)
class Union:
    parts: tuple

    def __init__(self, parts: Iterable["ConstructionExpr"]):
        object.__setattr__(self, "parts", tuple(parts))

    @property
    def order(self) -> int:
        return sum(p.order for p in self.parts)

    @property
    def size(self) -> int:
        return sum(p.size for p in self.parts)

    def __str__(self) -> str:
        shown = [p for p in self.parts if p.order > 0] or list(self.parts)
        if not shown:
            return "()"
        return " + ".join(_wrap(p, (Join, Union)) for p in shown)


@dataclass(frozen=True)
class Join:
    left: "ConstructionExpr"
    right: "ConstructionExpr"

    @property
    def order(self) -> int:
        return self.left.order + self.right.order

    @property
    def size(self) -> int:
        return self.left.size + self.right.size + self.left.order * self.right.order

    def __str__(self) -> str:
        return f"{_wrap(self.left, (Union,))} v {_wrap(self.right, (Union, Join))}"


@dataclass(frozen=True)
class Copies:
    count: int
    sub: "ConstructionExpr"

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("negative copy count")

    @property
    def order(self) -> int:
        return self.count * self.sub.order

    @property
    def size(self) -> int:
        return self.count * self.sub.size

    def __str__(self) -> str:
        if self.count == 1:
            return str(self.sub)
        return f"{self.count}{_wrap(self.sub, (Union, Join, Copies))}"


ConstructionExpr = _U[Complete, EmptyGraph, Union, Join, Copies]


def _wrap(e, kinds) -> str:
    return f"({e})" if isinstance(e, kinds) else str(e)


def build(expr: ConstructionExpr) -> Graph:
    """Materialize an expression; leaves get contiguous ranges left to right."""
    n = expr.order
    if n < 1:
        raise ValueError("expression has no vertices")
    rows = [0] * n
    _emit(expr, 0, rows)
    return Graph(n, tuple(rows))


def _span(lo: int, hi: int) -> int:
    return ((1 << (hi - lo)) - 1) << lo


def _emit(e, at: int, rows: list[int]) -> int:
    if isinstance(e, Complete):
        mask = _span(at, at + e.a)
        for v in range(at, at + e.a):
            rows[v] = mask ^ (1 << v)
        return e.a
    if isinstance(e, EmptyGraph):
        return e.a
    if isinstance(e, Union):
        used = 0
        for p in e.parts:
            used += _emit(p, at + used, rows)
        return used
    if isinstance(e, Copies):
        used = 0
        for _ in range(e.count):
            used += _emit(e.sub, at + used, rows)
        return used
    if isinstance(e, Join):
        nl = _emit(e.left, at, rows)
        nr = _emit(e.right, at + nl, rows)
        left, right = _span(at, at + nl), _span(at + nl, at + nl + nr)
        for v in range(at, at + nl):
            rows[v] |= right
        for v in range(at + nl, at + nl + nr):
            rows[v] |= left
        return nl + nr
    raise TypeError(f"not a construction expression: {e!r}")


def copy_blocks(expr: ConstructionExpr) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Vertex blocks of every ``Copies`` node in the built graph.

    Each group lists the blocks of one node in vertex order; exchanging two
    blocks of a group (matching vertices in order) is an automorphism of
    ``build(expr)``.  Used as symmetry hints by the containment search.
    """
    groups: list[tuple[tuple[int, ...], ...]] = []

    def walk(e, at: int) -> None:
        if isinstance(e, Union):
            for p in e.parts:
                walk(p, at)
                at += p.order
        elif isinstance(e, Join):
            walk(e.left, at)
            walk(e.right, at + e.left.order)
        elif isinstance(e, Copies):
            size = e.sub.order
            if e.count >= 2 and size >= 1:
                groups.append(
                    tuple(tuple(range(at + i * size, at + (i + 1) * size)) for i in range(e.count))
                )
            for i in range(e.count):
                walk(e.sub, at + i * size)

    walk(expr, 0)
    return tuple(groups)


def normalize(expr: ConstructionExpr) -> ConstructionExpr | None:
    """Rewrite into a normal form that identifies many isomorphic expressions.

    Rules: copies expand, unions and joins flatten and sort, empty parts
    drop, K_1 merges into the neighbouring cliques (joins) or independent
    sets (unions), K_a v K_b = K_(a+b).  Sound but not complete: equal
    normal forms imply isomorphic graphs, not conversely.  Returns None for
    a zero-vertex expression.
    """
    if isinstance(expr, (Complete, EmptyGraph)):
        if expr.a == 0:
            return None
        if expr.a == 1:
            return EmptyGraph(1)
        return expr
    if isinstance(expr, Copies):
        return normalize(Union([expr.sub] * expr.count))
    if isinstance(expr, Union):
        parts, loose = [], 0
        for p in (normalize(q) for q in expr.parts):
            if p is None:
                continue
            for q in p.parts if isinstance(p, Union) else (p,):
                if isinstance(q, EmptyGraph):
                    loose += q.a
                else:
                    parts.append(q)
        if loose:
            parts.append(EmptyGraph(loose))
        return _assemble(parts, Union)
    if isinstance(expr, Join):
        ops, clique = [], 0
        for p in (normalize(expr.left), normalize(expr.right)):
            if p is None:
                continue
            for q in _join_operands(p):
                if isinstance(q, Complete) or (isinstance(q, EmptyGraph) and q.a == 1):
                    clique += q.a
                else:
                    ops.append(q)
        if clique == 1:
            ops.append(EmptyGraph(1))
        elif clique:
            ops.append(Complete(clique))
        return _assemble(ops, Join)
    raise TypeError(f"not a construction expression: {expr!r}")


def _join_operands(e) -> list:
    if isinstance(e, Join):
        return _join_operands(e.left) + _join_operands(e.right)
    return [e]


def _assemble(items: list, kind):
    if not items:
        return None
    items.sort(key=str)
    if len(items) == 1:
        return items[0]
    if kind is Union:
        return Union(items)
    out = items[-1]
    for e in reversed(items[:-1]):
        out = Join(e, out)
    return out


# --------------------------------------------------------------------------
# graph6


def _size_prefix(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    if n <= (1 << 36) - 1:
        return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def graph6_encode(g: Graph) -> str:
    """Standard graph6 (no header): size prefix then the upper triangle
    x(0,1) x(0,2) x(1,2) x(0,3) ... in 6-bit groups offset by 63."""
    bits = [(g.rows[j] >> i) & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        chunk = 0
        for b in bits[k : k + 6]:
            chunk = chunk << 1 | b
        body.append(chr(63 + chunk))
    return _size_prefix(g.n) + "".join(body)


def graph6_decode(line: str | bytes) -> Graph:
    if isinstance(line, bytes):
        line = line.decode("ascii")
    s = line.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise Graph6Error("empty graph6 string")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid graph6 character {ch!r} at position {pos}")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] != 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] != 63:
        if len(vals) < 4:
            raise Graph6Error("truncated size field")
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        body = vals[4:]
    else:
        if len(vals) < 8:
            raise Graph6Error("truncated size field")
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        body = vals[8:]
    if n < 1:
        raise Graph6Error("graph6 string describes a graph with no vertices")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"expected {(nbits + 5) // 6} data characters for n={n}, got {len(body)}")
    pad = len(body) * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


# --------------------------------------------------------------------------
# canonical forms


def canonical_labeling(g: Graph) -> tuple[int, list[int]]:
    """(canonical key, lab) with lab[v] the canonical position of v."""
    if g.n > _canon.MAX_KEY_ORDER:
        raise ValueError(f"canonical labeling supports n <= {_canon.MAX_KEY_ORDER}")
    key, lab = _canon.canon_label(g.adjacency)
    return int(key), [int(x) for x in lab]


def canonical_key(g: Graph) -> int:
    return canonical_labeling(g)[0]


def from_key(key: int, n: int) -> Graph:
    """Inverse of the key encoding used by canonical labeling."""
    rows = [0] * n
    bit = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if key >> bit & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit -= 1
    return Graph(n, tuple(rows))


def canonical_graph(g: Graph) -> Graph:
    key, _ = canonical_labeling(g)
    return from_key(key, g.n)


def canonical_form(g: Graph) -> bytes:
    """graph6 bytes of the canonical relabeling; equal iff isomorphic."""
    if g.n > CANONICAL_MAX_ORDER:
        raise ValueError(f"canonical_form supports n <= {CANONICAL_MAX_ORDER}, got {g.n}")
    return graph6_encode(canonical_graph(g)).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.edge_count == h.edge_count and canonical_key(g) == canonical_key(h)
