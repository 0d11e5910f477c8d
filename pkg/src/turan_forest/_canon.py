"""Canonical labeling and canonical augmentation kernels (n <= 11).

A graph is keyed by the integer whose bits are the upper triangle of its
adjacency matrix in graph6 order (column-major), most significant first.
The canonical key is the maximum key over the leaves of an
individualization-refinement tree; twin vertices in the target cell are
explored once since swapping them is an automorphism.
"""

import numpy as np

from ._accel import njit

MAX_KEY_ORDER = 11


@njit
def twin_classes(adj):
    """Class id (smallest member) under the open/closed twin relation."""
    n = adj.shape[0]
    cls = np.arange(n)
    for v in range(n):
        for u in range(v):
            if cls[u] != u:
                continue
            same = True
            for w in range(n):
                if w == u or w == v:
                    continue
                if adj[u, w] != adj[v, w]:
                    same = False
                    break
            if same:
                cls[v] = u
                break
    return cls


@njit
def _sig_less(cols, cnt, ncol, a, b):
    if cols[a] != cols[b]:
        return cols[a] < cols[b]
    for c in range(ncol):
        if cnt[a, c] != cnt[b, c]:
            return cnt[a, c] < cnt[b, c]
    return False


@njit
def refine(adj, colors):
    """Equitable refinement; colors are dense ranks and keep their order."""
    n = adj.shape[0]
    cols = colors.copy()
    ncol = 0
    for v in range(n):
        if cols[v] + 1 > ncol:
            ncol = cols[v] + 1
    cnt = np.zeros((n, n), np.int64)
    order = np.empty(n, np.int64)
    while True:
        cnt[:, :] = 0
        for v in range(n):
            for u in range(n):
                if adj[v, u]:
                    cnt[v, cols[u]] += 1
        for i in range(n):
            order[i] = i
        for i in range(1, n):
            x = order[i]
            j = i - 1
            while j >= 0 and _sig_less(cols, cnt, ncol, x, order[j]):
                order[j + 1] = order[j]
                j -= 1
            order[j + 1] = x
        new = np.empty(n, np.int64)
        c = 0
        new[order[0]] = 0
        for i in range(1, n):
            if _sig_less(cols, cnt, ncol, order[i - 1], order[i]):
                c += 1
            new[order[i]] = c
        cols = new
        if c + 1 == ncol:
            break
        ncol = c + 1
    return cols, ncol


@njit
def labeled_key(adj, lab):
    """Key of the graph relabeled so that vertex v sits at position lab[v]."""
    n = adj.shape[0]
    inv = np.empty(n, np.int64)
    for v in range(n):
        inv[lab[v]] = v
    key = 0
    for j in range(1, n):
        for i in range(j):
            key = key * 2 + (1 if adj[inv[i], inv[j]] else 0)
    return key


@njit
def canon_label(adj):
    """Return (canonical key, lab) where lab[v] is v's canonical position."""
    n = adj.shape[0]
    best_key = -1
    best_lab = np.zeros(n, np.int64)
    if n == 0:
        return 0, best_lab
    twin = twin_classes(adj)
    stack = np.empty((n + 1, n), np.int64)
    ncols = np.empty(n + 1, np.int64)
    cell = np.empty(n + 1, np.int64)
    cursor = np.empty(n + 1, np.int64)
    seen = np.zeros((n + 1, n), np.uint8)
    c0, k0 = refine(adj, np.zeros(n, np.int64))
    stack[0] = c0
    ncols[0] = k0
    cursor[0] = -1
    depth = 0
    while depth >= 0:
        if cursor[depth] == -1:
            if ncols[depth] == n:
                key = labeled_key(adj, stack[depth])
                if key > best_key:
                    best_key = key
                    best_lab[:] = stack[depth]
                depth -= 1
                continue
            size = np.zeros(n, np.int64)
            for v in range(n):
                size[stack[depth, v]] += 1
            target = 0
            while size[target] < 2:
                target += 1
            cell[depth] = target
            cursor[depth] = 0
            seen[depth, :] = 0
        v = cursor[depth]
        while v < n and (stack[depth, v] != cell[depth] or seen[depth, twin[v]]):
            v += 1
        if v == n:
            depth -= 1
            continue
        cursor[depth] = v + 1
        seen[depth, twin[v]] = 1
        c = cell[depth]
        child = stack[depth].copy()
        for u in range(n):
            if child[u] > c or (child[u] == c and u != v):
                child[u] += 1
        cols, k = refine(adj, child)
        stack[depth + 1] = cols
        ncols[depth + 1] = k
        cursor[depth + 1] = -1
        depth += 1
    return best_key, best_lab


@njit
def key_to_adj(key, n):
    adj = np.zeros((n, n), np.uint8)
    bit = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if (key >> bit) & 1:
                adj[i, j] = 1
                adj[j, i] = 1
            bit -= 1
    return adj


@njit
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(nogil=True)
def augment_children(padj, pkey, min_edges):
    """Canonical keys of all one-vertex extensions of a canonical parent.

    A child is kept only when deleting its canonically last vertex gives
    back this parent's class, so across all parents of one level each
    class appears under exactly one parent (duplicates within a parent
    are possible and left to the caller).  Children with fewer than
    ``min_edges`` edges are skipped before labeling.
    """
    m = padj.shape[0]
    n = m + 1
    pe = 0
    for i in range(m):
        for j in range(i + 1, m):
            if padj[i, j]:
                pe += 1
    out = np.empty(1 << m, np.int64)
    cnt = 0
    cadj = np.zeros((n, n), np.uint8)
    cadj[:m, :m] = padj
    sub = np.zeros((m, m), np.uint8)
    for mask in range(1 << m):
        if pe + _popcount(mask) < min_edges:
            continue
        for i in range(m):
            b = (mask >> i) & 1
            cadj[i, m] = b
            cadj[m, i] = b
        key, lab = canon_label(cadj)
        vstar = 0
        while lab[vstar] != n - 1:
            vstar += 1
        if vstar != m:
            ri = 0
            for i in range(n):
                if i == vstar:
                    continue
                rj = 0
                for j in range(n):
                    if j == vstar:
                        continue
                    sub[ri, rj] = cadj[i, j]
                    rj += 1
                ri += 1
            pk, _ = canon_label(sub)
            if pk != pkey:
                continue
        out[cnt] = key
        cnt += 1
    return out[:cnt]
