"""Exact counting, enumeration, and detection of fixed-length cycles.

The enumerator generates each cycle exactly once: the DFS roots at the
cycle's minimal vertex, extends paths through strictly larger vertices, and
closes only when the second path vertex is smaller than the last, which fixes
both rotation and reflection.  Counts are therefore exact integers with no
post-hoc division.  Candidate sets are pruned by bitset intersection and by
BFS distance back to the root (a vertex further from the root than the
remaining number of steps can never close the cycle).

Fixed-length cycle detection is NP-hard in general; these routines are meant
for desk scale (sparse inputs up to a few hundred vertices, dense ones up to
roughly 64).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Iterator

from . import kernels
from .errors import GraphInputError
from .graph import Graph, bfs_layers, bits

_WORD_LIMIT = 4096  # compiled kernel guard, mirrored here for dispatch


def _reach_masks(g: Graph, root: int, radius: int, restrict: int) -> list[int]:
    """reach[d] = vertices within distance d of root inside restrict ∪ {root}."""
    layers = bfs_layers(g, root, restrict)
    reach = []
    acc = 0
    for d in range(radius + 1):
        if d < len(layers):
            acc |= layers[d]
        reach.append(acc)
    return reach


def _iter_cycles_from_root(g: Graph, root: int, length: int) -> Iterator[tuple[int, ...]]:
    """Canonical cycles whose minimal vertex is ``root``, in lexicographic order."""
    adj = g._rows
    allowed = g.full_mask >> (root + 1) << (root + 1)  # vertices > root
    reach = _reach_masks(g, root, length - 1, allowed)
    root_adj = adj[root] & allowed
    if not root_adj:
        return

    path = [root, 0] + [0] * (length - 2)

    def extend(last: int, used: int, depth: int) -> Iterator[tuple[int, ...]]:
        if depth == length - 1:
            closers = adj[last] & root_adj & ~used
            closers &= -1 << (path[1] + 1)  # second vertex < last fixes reflection
            for c in bits(closers):
                path[depth] = c
                yield tuple(path[:length])
            return
        # the candidate at index `depth` still has length - depth cycle edges
        # left to get back to the root
        cands = adj[last] & allowed & ~used & reach[length - depth]
        for c in bits(cands):
            path[depth] = c
            yield from extend(c, used | (1 << c), depth + 1)

    for c1 in bits(root_adj):
        path[1] = c1
        yield from extend(c1, (1 << root) | (1 << c1), 2)


def _count_from_root(g: Graph, root: int, length: int) -> int:
    adj = g._rows
    allowed = g.full_mask >> (root + 1) << (root + 1)
    reach = _reach_masks(g, root, length - 1, allowed)
    root_adj = adj[root] & allowed
    if not root_adj:
        return 0
    total = 0

    def extend(last: int, used: int, depth: int, floor_mask: int) -> int:
        if depth == length - 1:
            return (adj[last] & root_adj & ~used & floor_mask).bit_count()
        acc = 0
        cands = adj[last] & allowed & ~used & reach[length - depth]
        for c in bits(cands):
            acc += extend(c, used | (1 << c), depth + 1, floor_mask)
        return acc

    for c1 in bits(root_adj):
        total += extend(c1, (1 << root) | (1 << c1), 2, -1 << (c1 + 1))
    return total


def _check_length(length: int) -> None:
    if length < 3:
        raise GraphInputError(f"cycle length must be at least 3, got {length}")


def count_cycles(g: Graph, length: int, threads: int = 1) -> int:
    """Number of distinct ``length``-cycle subgraphs of ``g``.

    Parallelises over root vertices; the result is an exact sum and identical
    for every thread count.
    """
    _check_length(length)
    if length > g.n:
        return 0
    if kernels.compiled_available() and g.n <= _WORD_LIMIT:
        words = g.words()
        if threads > 1 and g.n >= 8:
            step = max(1, g.n // (4 * threads))
            ranges = [(lo, min(lo + step, g.n)) for lo in range(0, g.n, step)]
            with ThreadPoolExecutor(max_workers=threads) as ex:
                parts = ex.map(
                    lambda r: kernels.fast.count_cycles_range(words, g.n, length, r[0], r[1]),
                    ranges,
                )
                return sum(parts)
        return kernels.fast.count_cycles_range(words, g.n, length, 0, g.n)
    return sum(_count_from_root(g, r, length) for r in range(g.n))


def enumerate_cycles(g: Graph, length: int, limit: int | None = None) -> list[tuple[int, ...]]:
    """All (or the first ``limit``) cycles in canonical form.

    Canonical form: minimal vertex first, then its smaller cycle-neighbour.
    The order is lexicographic and deterministic.
    """
    _check_length(length)
    out: list[tuple[int, ...]] = []
    if length > g.n:
        return out
    for root in range(g.n):
        for wit in _iter_cycles_from_root(g, root, length):
            out.append(wit)
            if limit is not None and len(out) >= limit:
                return out
    return out


def iter_cycles(g: Graph, length: int) -> Iterator[tuple[int, ...]]:
    """Generator variant of :func:`enumerate_cycles` (same order)."""
    _check_length(length)
    if length > g.n:
        return
    for root in range(g.n):
        yield from _iter_cycles_from_root(g, root, length)


def has_cycle_of_length(g: Graph, length: int) -> bool:
    """True iff ``g`` contains a cycle with exactly ``length`` vertices.

    Short-circuits on the first witness.
    """
    _check_length(length)
    return bool(enumerate_cycles(g, length, limit=1))


def shortest_odd_cycle(g: Graph) -> int | None:
    """Odd girth of ``g``; None when bipartite (no odd cycle).

    Per-root BFS: an edge inside BFS layer d closes an odd walk of length
    2d+1, and the minimum of 2d+1 over all roots and layers is exactly the
    odd girth.
    """
    best: int | None = None
    for root in range(g.n):
        layers = bfs_layers(g, root)
        for d, layer in enumerate(layers):
            if best is not None and 2 * d + 1 >= best:
                break
            for u in bits(layer):
                if g.adj(u) & layer & (-1 << (u + 1)):
                    best = 2 * d + 1
                    break
            else:
                continue
            break
    return best
