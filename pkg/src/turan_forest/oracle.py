"""Exact Turán numbers on few vertices by isomorph-free enumeration.

Graphs are generated by canonical augmentation, one vertex at a time.
For ``turan_oracle`` only forest-free graphs are extended: freeness is
inherited by induced subgraphs, and the augmentation parent of a graph is
one of them, so no free graph is lost.  With a known free construction of
``seed`` edges on n vertices, a graph on m < n vertices can only lead to
a graph of >= seed edges if it has at least seed - (C(n,2) - C(m,2))
edges, which prunes the early levels hard.
"""

from __future__ import annotations

import json
import logging
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Iterator

import numpy as np

from . import _canon, _search
from .containment import is_free, kernel_arrays
from .forest import ForestSpec, as_spec
from .graph import Graph, Union, Complete, EmptyGraph, build, from_key, graph6_encode

log = logging.getLogger(__name__)

MAX_ORDER = 10
GUARANTEED_ORDER = 9
CACHE_FILE = "oracle.jsonl"
FINAL_BATCHES = 64  # checkpoint granularity of the last level


@dataclass(frozen=True)
class OracleResult:
    n: int
    spec: str
    max_edges: int
    extremal_classes: tuple[str, ...]  # canonical graph6, sorted
    graphs_examined: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "spec": self.spec,
            "max_edges": self.max_edges,
            "extremal_classes": list(self.extremal_classes),
            "graphs_examined": self.graphs_examined,
        }


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ORDER}, got {n}")
    if n > GUARANTEED_ORDER:
        warnings.warn(f"n = {n} enumerates millions of classes and can take hours", RuntimeWarning, stacklevel=3)


def _edges(key: int) -> int:
    return int(key).bit_count()


def _expand(args) -> tuple[np.ndarray, int]:
    """Canonical children of a batch of parents, optionally filtered to forest-free."""
    parents, m, min_edges, kinds, sizes = args
    out = []
    examined = 0
    for pk in parents:
        kids = _canon.augment_children(_canon.key_to_adj(pk, m), pk, min_edges)
        if kids.size:
            kids = np.unique(kids)
            examined += kids.size
            out.append(kids)
    keys = np.concatenate(out) if out else np.empty(0, np.int64)
    if kinds is not None and keys.size:
        keys = keys[_search.all_free(keys, m + 1, kinds, sizes).astype(bool)]
    return keys, examined


def _batches(keys: np.ndarray, pieces: int) -> list[np.ndarray]:
    if keys.size == 0:
        return []
    return [b for b in np.array_split(keys, max(1, min(keys.size, pieces))) if b.size]


class _Pool:
    """A process pool when jobs > 1, else in-process map.  Output order is input order."""

    def __init__(self, jobs: int):
        self.jobs = max(1, jobs)
        self._ex = ProcessPoolExecutor(self.jobs) if self.jobs > 1 else None

    def map(self, fn, tasks):
        if self._ex is None or len(tasks) < 2:
            return [fn(t) for t in tasks]
        return list(self._ex.map(fn, tasks))

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        if self._ex is not None:
            self._ex.shutdown()


def _next_level(keys, m, min_edges, kinds, sizes, pool: _Pool) -> tuple[np.ndarray, int]:
    tasks = [(b, m, min_edges, kinds, sizes) for b in _batches(keys, 8 * pool.jobs)]
    results = pool.map(_expand, tasks)
    examined = sum(r[1] for r in results)
    parts = [r[0] for r in results if r[0].size]
    merged = np.sort(np.concatenate(parts)) if parts else np.empty(0, np.int64)
    return merged, examined


def canonical_keys(n: int, jobs: int = 1) -> np.ndarray:
    """Sorted canonical keys of all graphs on n vertices, one per class."""
    _check_order(n)
    keys = np.zeros(1, np.int64)
    with _Pool(jobs) as pool:
        for m in range(1, n):
            keys, _ = _next_level(keys, m, 0, None, None, pool)
    return keys


def enumerate_graphs(n: int, jobs: int = 1) -> Iterator[Graph]:
    """One canonical representative per isomorphism class, by increasing key."""
    for k in canonical_keys(n, jobs):
        yield from_key(int(k), n)


def free_keys_by_order(nmax: int, spec: ForestSpec | str, jobs: int = 1) -> dict[int, np.ndarray]:
    """All spec-free classes on m vertices for every m <= nmax (no edge pruning)."""
    spec = as_spec(spec)
    _check_order(nmax)
    kinds, sizes = kernel_arrays(spec)
    out = {1: np.zeros(1, np.int64)}
    with _Pool(jobs) as pool:
        for m in range(1, nmax):
            out[m + 1], _ = _next_level(out[m], m, 0, kinds, sizes, pool)
    return out


def _result(n: int, spec: ForestSpec, keys: np.ndarray, examined: int) -> OracleResult:
    edges = np.array([_edges(k) for k in keys], np.int64)
    top = int(edges.max())
    classes = tuple(sorted(graph6_encode(from_key(int(k), n)) for k in keys[edges == top]))
    return OracleResult(n, str(spec), top, classes, examined)


def turan_table(nmax: int, spec: ForestSpec | str, jobs: int = 1) -> dict[int, OracleResult]:
    """ex(m, spec) with extremal classes for every 1 <= m <= nmax in one pass."""
    spec = as_spec(spec)
    levels = free_keys_by_order(nmax, spec, jobs)
    return {m: _result(m, spec, keys, int(keys.size)) for m, keys in levels.items()}


def seed_edges(n: int, spec: ForestSpec) -> int:
    """Edge count of the best simple construction verified spec-free on n vertices."""
    from .constructions import faudree_extremal_set, g1, g2, g3

    v = spec.total_vertices
    cands = [Union([Complete(min(n, v - 1)), EmptyGraph(n - min(n, v - 1))])]
    paths, stars = spec.paths, spec.stars
    if len(paths) == 1 and not stars:
        cands += [d.expr for d in faudree_extremal_set(n, paths[0].size)]
    if paths and len({c.size for c in paths}) == 1 and all(s.size == paths[0].size - 1 for s in stars):
        L, k1, k2 = paths[0].size, len(paths), len(stars)
        for make in (lambda: g1(n, k2, L), lambda: g2(n, k1, k2, L), lambda: g3(n, k2)):
            try:
                cands.append(make().expr)
            except ValueError:
                pass
    best = 0
    for e in cands:
        if e.order == n and e.size > best and is_free(build(e), spec):
            best = e.size
    return best


class _Checkpoint:
    """JSON-lines progress for the last level: one record per finished batch."""

    def __init__(self, path: Path, n: int, spec: str):
        self.path, self.n, self.spec = path, n, spec
        self.done: dict[int, dict] = {}
        if path.exists():
            for line in path.read_text().splitlines():
                rec = json.loads(line)
                if rec.get("n") == n and rec.get("spec") == spec:
                    self.done[rec["batch"]] = rec

    def record(self, batch: int, keys: list[int], examined: int) -> None:
        rec = {"n": self.n, "spec": self.spec, "batch": batch, "keys": keys, "examined": examined}
        with self.path.open("a") as fh:
            fh.write(json.dumps(rec) + "\n")
        self.done[batch] = rec


def _cache_lookup(cache_dir: Path, n: int, spec: str) -> OracleResult | None:
    path = cache_dir / CACHE_FILE
    if not path.exists():
        return None
    rows = []
    for line in path.read_text().splitlines():
        rec = json.loads(line)
        if rec["n"] == n and rec["spec"] == spec:
            rows.append(rec)
    if not rows:
        return None
    return OracleResult(n, spec, rows[0]["max_edges"], tuple(sorted({r["class"] for r in rows})),
                        int(rows[0].get("examined", 0)))


def _cache_store(cache_dir: Path, res: OracleResult) -> None:
    cache_dir.mkdir(parents=True, exist_ok=True)
    with (cache_dir / CACHE_FILE).open("a") as fh:
        for g6 in res.extremal_classes:
            fh.write(json.dumps({"n": res.n, "spec": res.spec, "max_edges": res.max_edges,
                                 "class": g6, "examined": res.graphs_examined}) + "\n")


def turan_oracle(n: int, spec: ForestSpec | str, jobs: int = 1, cache_dir: str | os.PathLike | None = None,
                 resume: str | os.PathLike | None = None, seed: bool = True) -> OracleResult:
    """ex(n, spec) and all extremal classes, by definition.

    ``resume`` names a checkpoint file for the last (most expensive) level;
    rerunning with the same file skips finished batches.
    """
    spec = as_spec(spec)
    _check_order(n)
    key = str(spec)
    if cache_dir is not None:
        hit = _cache_lookup(Path(cache_dir), n, key)
        if hit is not None:
            return hit
    with _Pool(jobs) as pool:
        res = _run(n, spec, pool, resume, seed_edges(n, spec) if seed else 0)
        if res is None:  # a seed is a free graph, so this only guards against a bad seed
            res = _run(n, spec, pool, None, 0)
    if cache_dir is not None:
        _cache_store(Path(cache_dir), res)
    return res


def _run(n: int, spec: ForestSpec, pool: _Pool, resume, seed: int) -> OracleResult | None:
    kinds, sizes = kernel_arrays(spec)
    total = comb(n, 2)
    keys = np.zeros(1, np.int64)
    examined = 1
    if n == 1:
        return _result(1, spec, keys, 1)
    for m in range(1, n - 1):
        floor = seed - (total - comb(m + 1, 2))
        keys, ex = _next_level(keys, m, max(floor, 0), kinds, sizes, pool)
        examined += ex
        log.info("level %d: %d free classes kept", m + 1, keys.size)
    # last level: batches, running maximum, optional checkpoint
    ckpt = _Checkpoint(Path(resume), n, str(spec)) if resume else None
    best, best_keys = seed, []
    for i, batch in enumerate(_batches(keys, FINAL_BATCHES)):
        if ckpt and i in ckpt.done:
            rec = ckpt.done[i]
            found, ex = np.array(rec["keys"], np.int64), rec["examined"]
        else:
            found, ex = _next_level(batch, n - 1, best, kinds, sizes, pool)
            if ckpt:
                ckpt.record(i, [int(k) for k in found], int(ex))
        examined += ex
        for k in found:
            e = _edges(k)
            if e > best:
                best, best_keys = e, [int(k)]
            elif e == best:
                best_keys.append(int(k))
    if not best_keys:
        return None
    return _result(n, spec, np.unique(np.array(best_keys, np.int64)), examined)
