# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: fixed-length cycle counting over multi-word bitset
adjacency, and the pruned edge-mask search over all labeled graphs.

The algorithms mirror the pure-Python implementations in ``cycles.py`` and
``constructions.py`` exactly (same canonical form, same pruning strategy, same
deterministic results); the test suite asserts equality between the two paths.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

ctypedef unsigned long long u64

cdef extern from *:
    """
    #if defined(__GNUC__)
    #define TC_POPCOUNT(x) __builtin_popcountll(x)
    #define TC_CTZ(x) __builtin_ctzll(x)
    #else
    static int TC_POPCOUNT(unsigned long long x) {
        int c = 0; while (x) { x &= x - 1; ++c; } return c;
    }
    static int TC_CTZ(unsigned long long x) {
        int c = 0; while (!(x & 1ULL)) { x >>= 1; ++c; } return c;
    }
    #endif
    """
    int TC_POPCOUNT(u64 x) nogil
    int TC_CTZ(u64 x) nogil

cdef enum:
    MAXWORDS = 64        # up to 4096 vertices
    MAXLEN = 32          # maximum cycle length handled by the kernel

cdef u64 ALL_ONES = <u64> 0xFFFFFFFFFFFFFFFF


cdef struct DfsCtx:
    const u64 *adj        # n rows of nw words
    u64 *reach            # `length` rows of nw words; row d = dist <= d
    u64 *allowed
    u64 *root_adj
    u64 *used
    int nw
    int length


cdef u64 dfs_count(DfsCtx *ctx, int last, int depth, int floor_v) nogil:
    """Count completions of the current path of `depth` vertices; closing
    vertices must exceed floor_v (the second path vertex) so that each cycle
    is generated exactly once."""
    cdef int i, v, base, nw = ctx.nw
    cdef int fw = floor_v >> 6, fb = floor_v & 63
    cdef u64 word, total = 0
    cdef const u64 *row = ctx.adj + last * nw
    cdef const u64 *reach_row
    cdef u64 cand[MAXWORDS]

    if depth == ctx.length - 1:
        for i in range(fw, nw):
            word = row[i] & ctx.root_adj[i] & (~ctx.used[i])
            if i == fw:
                if fb == 63:
                    continue
                word &= ALL_ONES << (fb + 1)
            total += TC_POPCOUNT(word)
        return total

    # the candidate at index `depth` still has length - depth cycle edges
    # left to get back to the root
    reach_row = ctx.reach + (ctx.length - depth) * nw
    for i in range(nw):
        cand[i] = row[i] & ctx.allowed[i] & (~ctx.used[i]) & reach_row[i]
    for i in range(nw):
        word = cand[i]
        base = i << 6
        while word:
            v = base + TC_CTZ(word)
            word &= word - 1
            ctx.used[v >> 6] |= (<u64> 1) << (v & 63)
            total += dfs_count(ctx, v, depth + 1, floor_v)
            ctx.used[v >> 6] &= ~((<u64> 1) << (v & 63))
    return total


cdef void build_reach(const u64 *adj, int nw, int root, const u64 *allowed,
                      int radius, u64 *reach) nogil:
    """reach[d] = vertices within distance d of root inside allowed ∪ {root}."""
    cdef u64 seen[MAXWORDS]
    cdef u64 frontier[MAXWORDS]
    cdef u64 nxt[MAXWORDS]
    cdef int i, j, v, base, d
    cdef u64 word
    memset(seen, 0, nw * sizeof(u64))
    seen[root >> 6] = (<u64> 1) << (root & 63)
    for i in range(nw):
        frontier[i] = seen[i]
        reach[i] = seen[i]
    for d in range(1, radius + 1):
        memset(nxt, 0, nw * sizeof(u64))
        for i in range(nw):
            word = frontier[i]
            base = i << 6
            while word:
                v = base + TC_CTZ(word)
                word &= word - 1
                for j in range(nw):
                    nxt[j] |= adj[v * nw + j]
        for i in range(nw):
            nxt[i] &= allowed[i] & ~seen[i]
            seen[i] |= nxt[i]
            frontier[i] = nxt[i]
            reach[d * nw + i] = reach[(d - 1) * nw + i] | nxt[i]


cdef u64 count_root(const u64 *adj, int n, int nw, int root, int length, u64 *reach) nogil:
    cdef u64 allowed[MAXWORDS]
    cdef u64 used[MAXWORDS]
    cdef u64 root_adj[MAXWORDS]
    cdef int i, c1, base, tail
    cdef u64 word, total = 0
    cdef bint any_adj = False
    cdef DfsCtx ctx

    # allowed = vertices strictly greater than root (root is the cycle minimum)
    for i in range(nw):
        allowed[i] = ALL_ONES
    for i in range(root >> 6):
        allowed[i] = 0
    if (root & 63) == 63:
        allowed[root >> 6] = 0
    else:
        allowed[root >> 6] &= ALL_ONES << ((root & 63) + 1)
    tail = n - ((nw - 1) << 6)
    if tail < 64:
        allowed[nw - 1] &= ((<u64> 1) << tail) - 1

    for i in range(nw):
        root_adj[i] = adj[root * nw + i] & allowed[i]
        if root_adj[i]:
            any_adj = True
    if not any_adj:
        return 0

    build_reach(adj, nw, root, allowed, length - 2, reach)

    ctx.adj = adj
    ctx.reach = reach
    ctx.allowed = allowed
    ctx.root_adj = root_adj
    ctx.used = used
    ctx.nw = nw
    ctx.length = length

    for i in range(nw):
        word = root_adj[i]
        base = i << 6
        while word:
            c1 = base + TC_CTZ(word)
            word &= word - 1
            memset(used, 0, nw * sizeof(u64))
            used[root >> 6] |= (<u64> 1) << (root & 63)
            used[c1 >> 6] |= (<u64> 1) << (c1 & 63)
            total += dfs_count(&ctx, c1, 2, c1)
    return total


def count_cycles_range(const u64[:, ::1] adj, int n, int length, int lo, int hi):
    """Sum of per-root canonical cycle counts for roots in [lo, hi).

    Returns a Python int; per-root subtotals fit in 64 bits at desk scale.
    """
    if n > MAXWORDS * 64:
        raise ValueError(f"kernel supports at most {MAXWORDS * 64} vertices")
    if length < 3 or length > MAXLEN:
        raise ValueError(f"kernel supports cycle lengths 3..{MAXLEN}")
    if n <= 0 or lo >= hi:
        return 0
    cdef int nw = adj.shape[1]
    cdef int root
    cdef u64 sub
    cdef object total = 0
    cdef u64 *reach = <u64 *> malloc(length * nw * sizeof(u64))
    if reach == NULL:
        raise MemoryError()
    try:
        for root in range(lo, hi):
            with nogil:
                sub = count_root(&adj[0, 0], n, nw, root, length, reach)
            total += sub
        return total
    finally:
        free(reach)


# ----------------------------------------------------------------------
# Pruned edge-mask search over all labeled graphs on n <= 8 vertices.
# Vertex masks fit one word; edges are indexed in lexicographic pair order.


cdef struct SearchCtx:
    int n
    int m                  # number of vertex pairs
    int k
    int ell
    int eu[28]
    int ev[28]
    u64 rows[8]
    long long best_count
    u64 best_mask
    long long leaves
    long long prunes


cdef u64 small_dfs(u64 *rows, u64 allowed, u64 root_adj, int last, u64 used,
                   int depth, int length, int floor_v) nogil:
    cdef u64 total = 0, cand, word
    cdef int v
    if depth == length - 1:
        cand = rows[last] & root_adj & ~used
        cand &= ALL_ONES << (floor_v + 1)
        return TC_POPCOUNT(cand)
    cand = rows[last] & allowed & ~used
    word = cand
    while word:
        v = TC_CTZ(word)
        word &= word - 1
        total += small_dfs(rows, allowed, root_adj, v, used | ((<u64> 1) << v),
                           depth + 1, length, floor_v)
    return total


cdef u64 small_count(u64 *rows, int n, int length) nogil:
    """Leaf counter (no reach pruning: n <= 8)."""
    cdef u64 total = 0, allowed, root_adj, word
    cdef int root, c1
    for root in range(n):
        allowed = (((<u64> 1) << n) - 1) & ~((((<u64> 1) << (root + 1)) - 1))
        root_adj = rows[root] & allowed
        word = root_adj
        while word:
            c1 = TC_CTZ(word)
            word &= word - 1
            total += small_dfs(rows, allowed, root_adj, c1,
                               ((<u64> 1) << root) | ((<u64> 1) << c1), 2, length, c1)
    return total


cdef bint path_exists(SearchCtx *ctx, int target, int cur, u64 used, int steps) nogil:
    cdef u64 word
    cdef int v
    if steps == 1:
        return (ctx.rows[cur] >> target) & 1
    word = ctx.rows[cur] & ~used
    while word:
        v = TC_CTZ(word)
        word &= word - 1
        if path_exists(ctx, target, v, used | ((<u64> 1) << v), steps - 1):
            return True
    return False


cdef bint closes_cycle(SearchCtx *ctx, int u, int v) nogil:
    """True iff the just-added edge (u, v) completed a cycle of length
    exactly ell among the present edges."""
    return path_exists(ctx, v, u, ((<u64> 1) << u) | ((<u64> 1) << v), ctx.ell - 1)


cdef void search_rec(SearchCtx *ctx, int idx, u64 mask) nogil:
    cdef long long cnt
    cdef int u, v
    if idx == ctx.m:
        cnt = <long long> small_count(ctx.rows, ctx.n, ctx.k)
        ctx.leaves += 1
        # maximise count; among maximisers keep the numerically least mask
        if cnt > ctx.best_count or (cnt == ctx.best_count and mask < ctx.best_mask):
            ctx.best_count = cnt
            ctx.best_mask = mask
        return
    search_rec(ctx, idx + 1, mask)
    u = ctx.eu[idx]
    v = ctx.ev[idx]
    ctx.rows[u] |= (<u64> 1) << v
    ctx.rows[v] |= (<u64> 1) << u
    if closes_cycle(ctx, u, v):
        ctx.prunes += 1
    else:
        search_rec(ctx, idx + 1, mask | ((<u64> 1) << idx))
    ctx.rows[u] &= ~((<u64> 1) << v)
    ctx.rows[v] &= ~((<u64> 1) << u)


def search_edge_masks(int n, int k, int ell, u64 prefix_mask, int prefix_len):
    """Explore all edge masks extending the given prefix assignment.

    Edges are lexicographic vertex pairs; bit i of a mask is edge i.  The
    prefix fixes edges [0, prefix_len).  Returns (max_count, best_mask,
    leaves, prunes); a prefix already containing an ell-cycle yields
    (-1, 0, 0, 1).
    """
    if n < 1 or n > 8:
        raise ValueError("search kernel supports 1 <= n <= 8")
    cdef SearchCtx ctx
    cdef int i, u, v, idx
    ctx.n = n
    ctx.k = k
    ctx.ell = ell
    ctx.best_count = -1
    ctx.best_mask = 0
    ctx.leaves = 0
    ctx.prunes = 0
    idx = 0
    for u in range(n):
        for v in range(u + 1, n):
            ctx.eu[idx] = u
            ctx.ev[idx] = v
            idx += 1
    ctx.m = idx
    if prefix_len > ctx.m:
        raise ValueError("prefix longer than edge list")
    for i in range(8):
        ctx.rows[i] = 0
    for i in range(prefix_len):
        if (prefix_mask >> i) & 1:
            u = ctx.eu[i]
            v = ctx.ev[i]
            ctx.rows[u] |= (<u64> 1) << v
            ctx.rows[v] |= (<u64> 1) << u
            if closes_cycle(&ctx, u, v):
                return (-1, 0, 0, 1)
    with nogil:
        search_rec(&ctx, prefix_len, prefix_mask)
    return (ctx.best_count, ctx.best_mask, ctx.leaves, ctx.prunes)
