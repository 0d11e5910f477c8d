"""Does a graph contain a given path/star forest?  With a certificate."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _search
from ._canon import twin_classes
from .forest import PATH, STAR, ForestSpec, as_spec
from .graph import Graph


@dataclass(frozen=True)
class Embedding:
    """One vertex list per spec component, in the spec's component order.

    Paths are listed in traversal order; stars list the center first.
    """

    spec: ForestSpec
    parts: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "forest": str(self.spec),
            "components": [
                {"kind": c.kind, "size": c.size, "vertices": list(p)}
                for c, p in zip(self.spec.components, self.parts)
            ],
        }


def _validated_blocks(g: Graph, symmetry) -> tuple[np.ndarray, np.ndarray, int]:
    """Turn block-group hints into kernel arrays, checking each is an automorphism."""
    blk_of = np.full(g.n, -1, np.int64)
    prevs: list[int] = []
    adj = g.adjacency
    for group in symmetry or ():
        blocks = [tuple(b) for b in group]
        if len(blocks) < 2:
            continue
        size = len(blocks[0])
        if any(len(b) != size for b in blocks):
            raise ValueError("interchangeable blocks must have equal size")
        if any(max(a) >= min(b) for a, b in zip(blocks, blocks[1:])):
            raise ValueError("interchangeable blocks must be listed in increasing index order")
        for a, b in zip(blocks, blocks[1:]):
            perm = np.arange(g.n)
            perm[list(a)] = b
            perm[list(b)] = a
            if not np.array_equal(adj[np.ix_(perm, perm)], adj):
                raise ValueError(f"swapping blocks {a} and {b} is not an automorphism")
        first = len(prevs)
        for i, b in enumerate(blocks):
            if (blk_of[list(b)] >= 0).any():
                raise ValueError("a vertex appears in two symmetry blocks")
            blk_of[list(b)] = first + i
            prevs.append(first + i - 1 if i else -1)
    blk_prev = np.array(prevs or [-1], np.int64)
    return blk_of, blk_prev, len(prevs)


def _kernel_order(spec: ForestSpec) -> list[int]:
    """Spec component indices with paths first, each kind in spec order."""
    idx = range(len(spec.components))
    return [i for i in idx if spec.components[i].kind == PATH] + [
        i for i in idx if spec.components[i].kind == STAR
    ]


def kernel_arrays(spec: ForestSpec) -> tuple[np.ndarray, np.ndarray]:
    """(kinds, sizes) in the kernel's component order."""
    comps = [spec.components[i] for i in _kernel_order(spec)]
    kinds = np.array([_search.PATH_KIND if c.kind == PATH else _search.STAR_KIND for c in comps], np.int64)
    return kinds, np.array([c.size for c in comps], np.int64)


def contains_forest(g: Graph, spec: ForestSpec | str, symmetry=None) -> Embedding | None:
    """Return an embedding of ``spec`` in ``g``, or None when g is spec-free.

    The search is complete.  ``symmetry`` optionally lists groups of
    interchangeable vertex blocks (as produced by ``copy_blocks``); each
    hint is verified to be an automorphism before it is used.
    """
    spec = as_spec(spec)
    if spec.total_vertices > g.n:
        return None
    order = _kernel_order(spec)
    comps = [spec.components[i] for i in order]
    kinds, sizes = kernel_arrays(spec)
    adj = np.ascontiguousarray(g.adjacency, dtype=np.uint8)
    twin_prev = _search.twin_predecessors(adj, twin_classes(adj))
    blk_of, blk_prev, nblk = _validated_blocks(g, symmetry)
    found, cert = _search.search(adj, kinds, sizes, twin_prev, blk_of, blk_prev, nblk)
    if not found:
        return None
    parts: list[tuple[int, ...]] = [()] * len(comps)
    at = 0
    for i, c in zip(order, comps):
        parts[i] = tuple(int(v) for v in cert[at : at + c.vertices])
        at += c.vertices
    return Embedding(spec, tuple(parts))


def is_free(g: Graph, spec: ForestSpec | str, symmetry=None) -> bool:
    return contains_forest(g, spec, symmetry) is None


def verify_embedding(g: Graph, spec: ForestSpec | str, emb: Embedding | Sequence[Sequence[int]]) -> bool:
    """Independent certificate check; never raises on malformed input."""
    try:
        return _verify(g, as_spec(spec), emb)
    except (TypeError, ValueError, IndexError):
        return False


def _verify(g: Graph, spec: ForestSpec, emb) -> bool:
    parts = emb.parts if isinstance(emb, Embedding) else tuple(tuple(p) for p in emb)
    if len(parts) != len(spec.components):
        return False
    seen: set[int] = set()
    for comp, vs in zip(spec.components, parts):
        if len(vs) != comp.vertices:
            return False
        for v in vs:
            if not isinstance(v, (int, np.integer)) or not 0 <= v < g.n or v in seen:
                return False
            seen.add(int(v))
        if comp.kind == PATH:
            ok = all(g.has_edge(a, b) for a, b in zip(vs, vs[1:]))
        else:
            ok = all(g.has_edge(vs[0], leaf) for leaf in vs[1:])
        if not ok:
            return False
    return True


def naive_contains(g: Graph, spec: ForestSpec | str) -> bool:
    """Try every injective placement of the forest's vertices.  Tiny graphs only."""
    spec = as_spec(spec)
    nv, edges = spec.edge_list()
    if nv > g.n:
        return False
    for image in itertools.permutations(range(g.n), nv):
        if all(g.has_edge(image[a], image[b]) for a, b in edges):
            return True
    return False
