"""Explicit constructions and exhaustive small-graph extremal search.

The search iterates every labeled graph on n <= 8 vertices as an edge mask
(lexicographic pair order), pruning a subtree as soon as a decided-present
edge completes a forbidden cycle: every completion of that assignment would
contain it.  Leaves are therefore exactly the forbidden-cycle-free graphs;
each leaf's target-cycle count is taken and the maximum kept, ties broken by
the numerically least mask.  The mask space is always partitioned by the
first eight edge decisions into independent subtrees so that examined/pruned
totals do not depend on the thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import kernels
from .blowup import BlowupSpec
from .cycles import count_cycles, has_cycle_of_length
from .errors import CounterexampleError, GraphInputError, ResourceLimitError
from .graph import Graph, build_graph

_SEARCH_MAX_N = 8
_PREFIX_EDGES = 8


def balanced_blowup_spec(k: int, n: int) -> BlowupSpec:
    """Canonical balanced part sizes on n vertices: larger parts first."""
    if n < 0:
        raise GraphInputError(f"n must be nonnegative, got {n}")
    q, r = divmod(n, k)
    return BlowupSpec(k, (q + 1,) * r + (q,) * (k - r))


def proposition_graph(k: int, n: int) -> Graph:
    """The counterexample family: a (k-1)-cycle v_1..v_{k-1} plus vertices
    w_1..w_{n-k+1}, with w_i joined to v_{2i-1}, v_{2i}, v_{2i+1} (1-based
    indices mod k-1).  Internally v_i becomes i-1 and the w_i follow.

    Defined for odd k >= 7 and k <= n <= 3(k-1)/2; it has no (k-2)-cycle yet
    beats the balanced blow-up's k-cycle count on this range of n.
    """
    if k < 7 or k % 2 == 0:
        raise GraphInputError(f"k must be odd and >= 7, got {k}")
    if not k <= n <= 3 * (k - 1) // 2:
        raise GraphInputError(f"n must satisfy {k} <= n <= {3 * (k - 1) // 2}, got {n}")
    base = k - 1
    edges = [(i, (i + 1) % base) for i in range(base)]
    for i in range(1, n - k + 2):
        w = base + i - 1
        for t in (2 * i - 1, 2 * i, 2 * i + 1):
            edges.append((w, (t - 1) % base))
    return build_graph(n, edges)


@dataclass(frozen=True)
class PropositionRow:
    n: int
    blowup_count: int
    counterexample_count: int
    ck2_free: bool
    beats_power_bound: bool | None  # only checked for n <= k + 10


@dataclass(frozen=True)
class PropositionReport:
    k: int
    rows: tuple[PropositionRow, ...]
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_proposition(k: int, threads: int = 1) -> PropositionReport:
    """Check the counterexample family against its exact count formulas.

    For each k <= n <= 3(k-1)/2: the balanced blow-up of the k-cycle has
    2^(n-k) k-cycles, the counterexample has (n-k+1) * 2^(n-k+1) and no
    (k-2)-cycle, and for n <= k+10 the counterexample count also exceeds
    (n/k)^k.  Any mismatch is collected as a failure string; a failure here
    would falsify the construction.
    """
    from .blowup import materialize

    if k not in (7, 9, 11):
        raise GraphInputError(f"desk-scale verification supports k in {{7, 9, 11}}, got {k}")
    rows = []
    failures = []
    for n in range(k, 3 * (k - 1) // 2 + 1):
        blow = materialize(balanced_blowup_spec(k, n))
        bcount = count_cycles(blow, k, threads=threads)
        if bcount != 2 ** (n - k):
            failures.append(f"n={n}: blow-up count {bcount} != 2^{n - k}")
        prop = proposition_graph(k, n)
        pcount = count_cycles(prop, k, threads=threads)
        expected = (n - k + 1) * 2 ** (n - k + 1)
        if pcount != expected:
            failures.append(f"n={n}: counterexample count {pcount} != {expected}")
        free = not has_cycle_of_length(prop, k - 2)
        if not free:
            failures.append(f"n={n}: counterexample contains a {k - 2}-cycle")
        beats = None
        if n <= k + 10:
            beats = expected * k**k > n**k
            if not beats:
                failures.append(f"n={n}: counterexample count does not exceed (n/k)^k")
        rows.append(PropositionRow(n, bcount, pcount, free, beats))
    return PropositionReport(k, tuple(rows), tuple(failures))


# ----------------------------------------------------------------------
# Exhaustive search


@dataclass(frozen=True)
class SearchResult:
    n: int
    k: int
    ell: int
    max_count: int
    witness: Graph
    graphs_examined: int
    pruned: int


def _edge_pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _mask_graph(n: int, pairs: list[tuple[int, int]], mask: int) -> Graph:
    return build_graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def _py_path_exists(rows: list[int], target: int, cur: int, used: int, steps: int) -> bool:
    if steps == 1:
        return bool(rows[cur] >> target & 1)
    cand = rows[cur] & ~used
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        if _py_path_exists(rows, target, v, used | low, steps - 1):
            return True
    return False


def _py_search(
    n: int, k: int, ell: int, pairs: list[tuple[int, int]], prefix_mask: int, prefix_len: int
) -> tuple[int, int, int, int]:
    """Pure-Python twin of the search kernel; same return convention."""
    m = len(pairs)
    rows = [0] * n
    for i in range(prefix_len):
        if prefix_mask >> i & 1:
            u, v = pairs[i]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            if _py_path_exists(rows, v, u, (1 << u) | (1 << v), ell - 1):
                return (-1, 0, 0, 1)
    best_count, best_mask = -1, 0
    leaves = prunes = 0

    def rec(idx: int, mask: int) -> None:
        nonlocal best_count, best_mask, leaves, prunes
        if idx == m:
            g = Graph(n, rows)
            cnt = count_cycles(g, k) if k <= n else 0
            leaves += 1
            if cnt > best_count or (cnt == best_count and mask < best_mask):
                best_count, best_mask = cnt, mask
            return
        rec(idx + 1, mask)
        u, v = pairs[idx]
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        if _py_path_exists(rows, v, u, (1 << u) | (1 << v), ell - 1):
            prunes += 1
        else:
            rec(idx + 1, mask | (1 << idx))
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)

    rec(prefix_len, prefix_mask)
    return (best_count, best_mask, leaves, prunes)


def exhaustive_max(n: int, k: int, ell: int, threads: int = 1) -> SearchResult:
    """Exact maximum number of k-cycles over all ell-cycle-free graphs on n
    labeled vertices, with the numerically least witness mask.

    Hard-capped at n <= 8 (2^28 masks).  graphs_examined counts the
    forbidden-cycle-free leaves reached; pruned counts cut subtrees
    (including rejected prefixes), and both are independent of the thread
    count because the prefix decomposition is fixed.
    """
    if n > _SEARCH_MAX_N:
        raise ResourceLimitError(f"exhaustive search is capped at n={_SEARCH_MAX_N}, got {n}")
    if n < 1:
        raise GraphInputError(f"n must be positive, got {n}")
    if not (3 <= ell < k):
        raise GraphInputError(f"need 3 <= ell < k, got ell={ell}, k={k}")
    if k % 2 == 0 or ell % 2 == 0:
        raise GraphInputError(f"k and ell must be odd, got k={k}, ell={ell}")
    pairs = _edge_pairs(n)
    m = len(pairs)
    plen = min(_PREFIX_EDGES, m)

    use_kernel = kernels.compiled_available()

    def run_prefix(prefix: int):
        if use_kernel:
            return kernels.fast.search_edge_masks(n, k, ell, prefix, plen)
        return _py_search(n, k, ell, pairs, prefix, plen)

    prefixes = list(range(1 << plen))
    if threads > 1 and use_kernel:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(run_prefix, prefixes))
    else:
        results = [run_prefix(p) for p in prefixes]

    best_count, best_mask = -1, 0
    leaves = prunes = 0
    for cnt, mask, lv, pr in results:
        leaves += lv
        prunes += pr
        if cnt < 0:
            continue
        if cnt > best_count or (cnt == best_count and mask < best_mask):
            best_count, best_mask = cnt, mask
    if best_count < 0:
        raise CounterexampleError("search found no forbidden-cycle-free graph; impossible")
    return SearchResult(
        n=n,
        k=k,
        ell=ell,
        max_count=int(best_count),
        witness=_mask_graph(n, pairs, int(best_mask)),
        graphs_examined=int(leaves),
        pruned=int(prunes),
    )
