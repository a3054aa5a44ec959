"""Inner loops of the containment searches.

Everything in this module is written in the subset of Python that numba's
nopython mode accepts, so the same source serves two paths:

* compiled with ``numba.njit`` (default when numba imports), and
* interpreted as plain Python over numpy arrays, selected by setting the
  environment variable ``BERGERAMSEY_DISABLE_JIT=1`` before import.

The compiled dispatchers keep the interpreted function on ``.py_func``,
which is what ``benchmarks/bench_kernels.py`` times against.
"""

import os

import numpy as np

JIT_DISABLED = os.environ.get("BERGERAMSEY_DISABLE_JIT", "").strip().lower() not in (
    "",
    "0",
    "false",
    "no",
)

try:
    if JIT_DISABLED:
        raise ImportError("jit disabled by environment")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def backend() -> str:
    return "numba" if HAS_NUMBA else "python"


@njit(cache=True)
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _matching_saturates(hedges, pmask, assign, match_h, vis, par, queue):
    """Augmenting-path bipartite matching, pattern edges on the left.

    ``pmask[j]`` is the host pair pattern edge ``j`` must sit inside; a
    hyperedge is adjacent to ``j`` iff it contains that pair.  On success
    ``assign`` holds a saturating matching.  A left vertex that fails to
    augment can never be matched later, so the first failure is final.
    """
    m = hedges.shape[0]
    p = pmask.shape[0]
    for h in range(m):
        match_h[h] = -1
        vis[h] = -1
    for j in range(p):
        assign[j] = -1
    for j in range(p):
        queue[0] = j
        qh = 0
        qt = 1
        found = -1
        while qh < qt and found < 0:
            left = queue[qh]
            qh += 1
            need = pmask[left]
            for h in range(m):
                if vis[h] != j and (hedges[h] & need) == need:
                    vis[h] = j
                    par[h] = left
                    if match_h[h] < 0:
                        found = h
                        break
                    queue[qt] = match_h[h]
                    qt += 1
        if found < 0:
            return False
        h = found
        while True:
            left = par[h]
            prev = assign[left]
            assign[left] = h
            match_h[h] = left
            if left == j:
                break
            h = prev
    return True


@njit(cache=True)
def berge_search(hedges, n_host, eu, ev, order, back_start, back, anchor, phi, assign):
    """Search for a Berge copy of the pattern inside ``hedges``.

    Pattern vertices are placed in ``order``; ``back[back_start[i]:back_start[i+1]]``
    lists the already-placed neighbours of ``order[i]``.  A partial placement is
    cut as soon as a placed pattern edge has no hyperedge covering its image.
    At a full placement, a saturating matching between pattern edges and
    hyperedges decides the injective assignment.

    ``anchor >= 0`` restricts to placements where some pattern edge lands
    inside ``hedges[anchor]``; callers use it when the class without that
    hyperedge is already known to be free.
    """
    m = hedges.shape[0]
    p = eu.shape[0]
    nv = order.shape[0]
    if p > m or nv > n_host:
        return False

    cover = np.zeros((n_host, n_host), np.int64)
    hdeg = np.zeros(n_host, np.int64)
    verts = np.empty(64, np.int64)
    for h in range(m):
        e = hedges[h]
        c = 0
        for a in range(n_host):
            if (e >> a) & 1:
                verts[c] = a
                c += 1
        if c < 2:
            continue
        for i in range(c):
            hdeg[verts[i]] += 1
            for k in range(i + 1, c):
                cover[verts[i], verts[k]] += 1
                cover[verts[k], verts[i]] += 1

    pdeg = np.zeros(nv, np.int64)
    for j in range(p):
        pdeg[eu[j]] += 1
        pdeg[ev[j]] += 1

    amask = np.int64(0)
    if anchor >= 0:
        amask = hedges[anchor]

    pmask = np.empty(p, np.int64)
    match_h = np.empty(m, np.int64)
    vis = np.empty(m, np.int64)
    par = np.empty(m, np.int64)
    queue = np.empty(p + 1, np.int64)

    used = np.zeros(n_host, np.bool_)
    cand = np.full(nv, -1, np.int64)
    pos = 0
    while pos >= 0:
        u = order[pos]
        if cand[pos] >= 0:
            used[cand[pos]] = False
        a = cand[pos] + 1
        found = -1
        while a < n_host:
            if not used[a] and hdeg[a] >= pdeg[u]:
                ok = True
                for t in range(back_start[pos], back_start[pos + 1]):
                    if cover[a, phi[back[t]]] == 0:
                        ok = False
                        break
                if ok:
                    found = a
                    break
            a += 1
        if found < 0:
            cand[pos] = -1
            pos -= 1
            continue
        cand[pos] = found
        used[found] = True
        phi[u] = found
        if pos < nv - 1:
            pos += 1
            continue
        for j in range(p):
            pmask[j] = (np.int64(1) << phi[eu[j]]) | (np.int64(1) << phi[ev[j]])
        if anchor >= 0:
            hit = False
            for j in range(p):
                if (amask & pmask[j]) == pmask[j]:
                    hit = True
                    break
            if not hit:
                continue
        if _matching_saturates(hedges, pmask, assign, match_h, vis, par, queue):
            return True
    return False


@njit(cache=True)
def subgraph_search(adj, n_host, eu, ev, order, back_start, back, anchor_a, anchor_b, phi):
    """Ordinary (not necessarily induced) subgraph search in a graph host.

    ``adj[a]`` is the neighbour bitmask of host vertex ``a``.  With
    ``anchor_a >= 0`` only embeddings using the host edge
    ``{anchor_a, anchor_b}`` are accepted.
    """
    p = eu.shape[0]
    nv = order.shape[0]
    if nv > n_host:
        return False
    pdeg = np.zeros(nv, np.int64)
    for j in range(p):
        pdeg[eu[j]] += 1
        pdeg[ev[j]] += 1
    hdeg = np.zeros(n_host, np.int64)
    for a in range(n_host):
        hdeg[a] = popcount(adj[a])

    used = np.zeros(n_host, np.bool_)
    cand = np.full(nv, -1, np.int64)
    pos = 0
    while pos >= 0:
        u = order[pos]
        if cand[pos] >= 0:
            used[cand[pos]] = False
        a = cand[pos] + 1
        found = -1
        while a < n_host:
            if not used[a] and hdeg[a] >= pdeg[u]:
                ok = True
                for t in range(back_start[pos], back_start[pos + 1]):
                    if not (adj[a] >> phi[back[t]]) & 1:
                        ok = False
                        break
                if ok:
                    found = a
                    break
            a += 1
        if found < 0:
            cand[pos] = -1
            pos -= 1
            continue
        cand[pos] = found
        used[found] = True
        phi[u] = found
        if pos < nv - 1:
            pos += 1
            continue
        if anchor_a < 0:
            return True
        for j in range(p):
            x = phi[eu[j]]
            y = phi[ev[j]]
            if (x == anchor_a and y == anchor_b) or (x == anchor_b and y == anchor_a):
                return True
    return False


@njit(cache=True)
def _triple_is_berge_triangle(a, b, c):
    # Distinct representatives of the three pairwise intersections, by brute force.
    ab = a & b
    ac = a & c
    bc = b & c
    x = ab
    while x:
        bx = x & -x
        y = ac & ~bx
        while y:
            by = y & -y
            z = bc & ~bx & ~by
            if z:
                return True
            y &= y - 1
        x &= x - 1
    return False


@njit(cache=True)
def first_triangle_free_triple(sets):
    """Return the first index triple ``i<j<k`` whose sets carry no Berge-K3,
    or ``(-1, -1, -1)`` when every triple works."""
    m = sets.shape[0]
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                if not _triple_is_berge_triangle(sets[i], sets[j], sets[k]):
                    return i, j, k
    return -1, -1, -1


@njit(cache=True)
def first_triangle_free_triple_from(sets, reps):
    """Same scan, but one member of every triple is drawn from ``reps``.

    Sound whenever every triple of the family is equivalent, under a symmetry
    preserving the Berge-K3 property, to one containing an index in ``reps``.
    """
    m = sets.shape[0]
    for t in range(reps.shape[0]):
        i = reps[t]
        for j in range(m):
            if j == i:
                continue
            for k in range(j + 1, m):
                if k == i:
                    continue
                if not _triple_is_berge_triangle(sets[i], sets[j], sets[k]):
                    return i, j, k
    return -1, -1, -1
