"""Backtracking kernel for vertex-disjoint path/star packing.

Slots are the path vertices (paths in order, each walked from its first
vertex) followed by one slot per star center; leaves are assigned at the
end by a bipartite b-matching.  Every symmetry rule below is a necessary
condition satisfied by the lexicographically least slot sequence among
all valid embeddings, so together they never discard the last witness:

* twins: pick a vertex only if its next-smaller twin is already used;
* blocks: never enter an untouched block while an earlier interchangeable
  block of the same group is untouched;
* identical consecutive components: first vertices strictly increase;
* paths: the first vertex is smaller than the last.
"""

import numpy as np

from ._accel import njit
from ._canon import key_to_adj, twin_classes

PATH_KIND = 0
STAR_KIND = 1


@njit
def twin_predecessors(adj, cls):
    """For each v, the largest u < v with cls[u] == cls[v], else -1."""
    n = adj.shape[0]
    last = np.full(n, -1, np.int64)
    prev = np.full(n, -1, np.int64)
    for v in range(n):
        prev[v] = last[cls[v]]
        last[cls[v]] = v
    return prev


@njit
def _csr(adj, rank):
    """Neighbor lists ordered by ``rank``."""
    n = adj.shape[0]
    order = np.argsort(rank)
    indptr = np.zeros(n + 1, np.int64)
    for v in range(n):
        c = 0
        for u in range(n):
            if adj[v, u]:
                c += 1
        indptr[v + 1] = indptr[v] + c
    nbr = np.empty(indptr[n], np.int64)
    for v in range(n):
        p = indptr[v]
        for i in range(n):
            u = order[i]
            if adj[v, u]:
                nbr[p] = u
                p += 1
    return indptr, nbr


@njit
def _leaf_matching(indptr, nbr, used, centers, need, leaves):
    """Assign need[j] distinct unused neighbors to each centers[j].

    Kuhn-style augmenting paths over "leaf slots" (one per required leaf),
    searched breadth-first.  Fills ``leaves`` (grouped per star) on success.
    """
    n = used.shape[0]
    total = 0
    for j in range(centers.shape[0]):
        total += need[j]
    owner = np.empty(total, np.int64)
    q = 0
    for j in range(centers.shape[0]):
        for _ in range(need[j]):
            owner[q] = j
            q += 1
    match_v = np.full(n, -1, np.int64)  # vertex -> leaf slot
    match_s = np.full(total, -1, np.int64)  # leaf slot -> vertex
    queue = np.empty(total, np.int64)
    par_slot = np.empty(n, np.int64)
    seen_slot = np.zeros(total, np.uint8)
    seen_v = np.zeros(n, np.uint8)
    for root in range(total):
        seen_slot[:] = 0
        seen_v[:] = 0
        head = 0
        tail = 0
        queue[tail] = root
        tail += 1
        seen_slot[root] = 1
        end = -1
        while head < tail and end < 0:
            sl = queue[head]
            head += 1
            c = centers[owner[sl]]
            for p in range(indptr[c], indptr[c + 1]):
                u = nbr[p]
                if used[u] or seen_v[u]:
                    continue
                seen_v[u] = 1
                par_slot[u] = sl
                if match_v[u] < 0:
                    end = u
                    break
                nxt = match_v[u]
                if not seen_slot[nxt]:
                    seen_slot[nxt] = 1
                    queue[tail] = nxt
                    tail += 1
        if end < 0:
            return False
        u = end
        while True:
            sl = par_slot[u]
            prev_u = match_s[sl]
            match_s[sl] = u
            match_v[u] = sl
            if sl == root:
                break
            u = prev_u
    for q in range(total):
        leaves[q] = match_s[q]
    return True


@njit
def _prune_ok(ci, ncomp, kinds, sizes, verts, suffix_verts, free_count,
              used, fdeg, indptr, nbr, comp_of, stack):
    """Necessary conditions for packing components ci.. into free vertices."""
    n = used.shape[0]
    if free_count < suffix_verts[ci]:
        return False
    # Hall-type count for stars still lacking a center (sorted by leaves, descending).
    j = 0
    for i in range(ci, ncomp):
        if kinds[i] != STAR_KIND:
            continue
        j += 1
        t = sizes[i]
        have = 0
        for v in range(n):
            if not used[v] and fdeg[v] >= t:
                have += 1
                if have >= j:
                    break
        if have < j:
            return False
    # Each remaining component lies inside one component of the free subgraph.
    ncc = 0
    comp_of[:] = -1
    csize = np.zeros(n, np.int64)
    for s in range(n):
        if used[s] or comp_of[s] >= 0:
            continue
        comp_of[s] = ncc
        top = 0
        stack[top] = s
        top += 1
        cnt = 0
        while top > 0:
            top -= 1
            v = stack[top]
            cnt += 1
            for p in range(indptr[v], indptr[v + 1]):
                u = nbr[p]
                if not used[u] and comp_of[u] < 0:
                    comp_of[u] = ncc
                    stack[top] = u
                    top += 1
        csize[ncc] = cnt
        ncc += 1
    for i in range(ci, ncomp):
        x = verts[i]
        need = 0
        for i2 in range(ci, ncomp):
            if verts[i2] >= x:
                need += 1
        have = 0
        for c in range(ncc):
            have += csize[c] // x
        if have < need:
            return False
    return True


@njit
def search(adj, kinds, sizes, twin_prev, blk_of, blk_prev, nblk):
    """Find a packing of the components (paths first, then stars).

    ``sizes`` holds vertices for paths and leaves for stars.  Returns
    ``(found, cert)`` where ``cert`` lists each path's vertices in order and
    then, per star, its center followed by its leaves.
    """
    n = adj.shape[0]
    ncomp = kinds.shape[0]
    verts = np.empty(ncomp, np.int64)
    for i in range(ncomp):
        verts[i] = sizes[i] if kinds[i] == PATH_KIND else sizes[i] + 1
    suffix_verts = np.zeros(ncomp + 1, np.int64)
    for i in range(ncomp - 1, -1, -1):
        suffix_verts[i] = suffix_verts[i + 1] + verts[i]
    total_v = suffix_verts[0]
    cert = np.full(total_v, -1, np.int64)
    if total_v > n:
        return False, cert

    deg = np.zeros(n, np.int64)
    for v in range(n):
        for u in range(n):
            if adj[v, u]:
                deg[v] += 1
    asc_rank = np.empty(n, np.int64)
    desc_rank = np.empty(n, np.int64)
    for v in range(n):
        asc_rank[v] = deg[v] * n + v
        desc_rank[v] = (n - deg[v]) * n + v
    asc = np.argsort(asc_rank)
    desc = np.argsort(desc_rank)
    indptr, nbr = _csr(adj, asc_rank)

    # slot layout
    nslots = 0
    nstars = 0
    for i in range(ncomp):
        if kinds[i] == PATH_KIND:
            nslots += sizes[i]
        else:
            nslots += 1
            nstars += 1
    s_comp = np.empty(nslots, np.int64)
    s_pos = np.empty(nslots, np.int64)
    first_slot = np.empty(ncomp, np.int64)
    s = 0
    for i in range(ncomp):
        first_slot[i] = s
        m = sizes[i] if kinds[i] == PATH_KIND else 1
        for p in range(m):
            s_comp[s] = i
            s_pos[s] = p
            s += 1
    same_prev = np.zeros(ncomp, np.uint8)
    for i in range(1, ncomp):
        if kinds[i] == kinds[i - 1] and sizes[i] == sizes[i - 1]:
            same_prev[i] = 1

    used = np.zeros(n, np.uint8)
    fdeg = deg.copy()
    touched = np.zeros(max(nblk, 1), np.int64)
    free_count = n
    chosen = np.full(nslots, -1, np.int64)
    cursor = np.zeros(nslots, np.int64)
    comp_of = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    centers = np.empty(nstars, np.int64)
    need = np.empty(nstars, np.int64)
    first_star = ncomp - nstars
    total_leaves = 0
    for i in range(first_star, ncomp):
        need[i - first_star] = sizes[i]
        total_leaves += sizes[i]
    leaves = np.empty(total_leaves, np.int64)

    s = 0
    fresh = True
    while True:
        if s == nslots:
            for j in range(nstars):
                centers[j] = chosen[first_slot[first_star + j]]
            if _leaf_matching(indptr, nbr, used, centers, need, leaves):
                q = 0
                for i in range(ncomp):
                    if kinds[i] == PATH_KIND:
                        for p in range(sizes[i]):
                            cert[q] = chosen[first_slot[i] + p]
                            q += 1
                l = 0
                for j in range(nstars):
                    cert[q] = centers[j]
                    q += 1
                    for _ in range(need[j]):
                        cert[q] = leaves[l]
                        q += 1
                        l += 1
                return True, cert
            s -= 1
            fresh = False
            v = chosen[s]
            used[v] = 0
            free_count += 1
            for p in range(indptr[v], indptr[v + 1]):
                fdeg[nbr[p]] += 1
            if blk_of[v] >= 0:
                touched[blk_of[v]] -= 1
            continue

        ci = s_comp[s]
        pos = s_pos[s]
        is_path = kinds[ci] == PATH_KIND
        if fresh:
            cursor[s] = 0
            fresh = False
            if pos == 0 and not _prune_ok(ci, ncomp, kinds, sizes, verts, suffix_verts,
                                          free_count, used, fdeg, indptr, nbr,
                                          comp_of, stack):
                if s == 0:
                    return False, cert
                s -= 1
                v = chosen[s]
                used[v] = 0
                free_count += 1
                for p in range(indptr[v], indptr[v + 1]):
                    fdeg[nbr[p]] += 1
                if blk_of[v] >= 0:
                    touched[blk_of[v]] -= 1
                continue

        # candidate source
        if is_path and pos > 0:
            prev = chosen[s - 1]
            lo = indptr[prev]
            hi = indptr[prev + 1]
        else:
            lo = 0
            hi = n
        last = is_path and pos == sizes[ci] - 1
        min_fdeg = sizes[ci] if not is_path else (0 if last else 1)
        lower = -1
        if pos == 0 and same_prev[ci]:
            lower = chosen[first_slot[ci - 1]]
        if last:
            lower = chosen[first_slot[ci]]

        pick = -1
        while cursor[s] < hi - lo:
            k = cursor[s]
            cursor[s] += 1
            if is_path and pos > 0:
                v = nbr[lo + k]
            elif is_path:
                v = asc[k]
            else:
                v = desc[k]
            if used[v] or v <= lower or fdeg[v] < min_fdeg:
                continue
            tp = twin_prev[v]
            if tp >= 0 and not used[tp]:
                continue
            b = blk_of[v]
            if b >= 0 and touched[b] == 0 and blk_prev[b] >= 0 and touched[blk_prev[b]] == 0:
                continue
            pick = v
            break

        if pick < 0:
            if s == 0:
                return False, cert
            s -= 1
            v = chosen[s]
            used[v] = 0
            free_count += 1
            for p in range(indptr[v], indptr[v + 1]):
                fdeg[nbr[p]] += 1
            if blk_of[v] >= 0:
                touched[blk_of[v]] -= 1
            continue

        chosen[s] = pick
        used[pick] = 1
        free_count -= 1
        for p in range(indptr[pick], indptr[pick + 1]):
            fdeg[nbr[p]] -= 1
        if blk_of[pick] >= 0:
            touched[blk_of[pick]] += 1
        s += 1
        fresh = True


@njit
def all_free(keys, n, kinds, sizes):
    """Mask of keys whose graphs contain no packing (twin rule only)."""
    out = np.zeros(keys.shape[0], np.uint8)
    blk_of = np.full(n, -1, np.int64)
    blk_prev = np.full(1, -1, np.int64)
    for i in range(keys.shape[0]):
        adj = key_to_adj(keys[i], n)
        tp = twin_predecessors(adj, twin_classes(adj))
        found, _ = search(adj, kinds, sizes, tp, blk_of, blk_prev, 0)
        out[i] = 0 if found else 1
    return out
