"""Immutable bitset-backed simple graphs and set/density/distance primitives.

Vertices are dense 0-based integers.  Adjacency is stored as one Python int
per vertex used as a bitset, which keeps every neighbourhood intersection a
single ``&``.  Vertex sets throughout the package are the same kind of int
bitset; :func:`mask_of` and :func:`bits` convert to and from iterables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import GraphInputError


def mask_of(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex indices into a bitset."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bits of a bitset in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances are immutable after construction; edits return new graphs, so a
    Graph may be shared freely across threads.
    """

    __slots__ = ("n", "_rows", "_words")

    def __init__(self, n: int, rows: Sequence[int]):
        self.n = n
        self._rows = tuple(rows)
        self._words = None
        if len(self._rows) != n:
            raise GraphInputError(f"expected {n} adjacency rows, got {len(self._rows)}")

    # -- basic queries -------------------------------------------------

    def adj(self, v: int) -> int:
        """Neighbourhood of ``v`` as a bitset."""
        return self._rows[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(bits(self._rows[v]))

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self._rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as sorted pairs, lexicographic order."""
        for u in range(self.n):
            row = self._rows[u] >> (u + 1) << (u + 1)
            for v in bits(row):
                yield (u, v)

    # -- derived graphs ------------------------------------------------

    def remove_edges(self, pairs: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self._rows)
        for u, v in pairs:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, rows)

    def add_edges(self, pairs: Iterable[tuple[int, int]]) -> "Graph":
        return build_graph(self.n, list(self.edges()) + list(pairs))

    # -- compiled-kernel interop ----------------------------------------

    def words(self) -> np.ndarray:
        """Adjacency as an (n, ceil(n/64)) uint64 array; cached."""
        if self._words is None:
            nw = max(1, (self.n + 63) // 64)
            arr = np.zeros((self.n, nw), dtype=np.uint64)
            for v, row in enumerate(self._rows):
                for w in range(nw):
                    arr[v, w] = (row >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
            self._words = arr
        return self._words

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list, deduplicating repeated pairs.

    Rejects self-loops and out-of-range indices with a diagnostic.
    """
    if n < 0:
        raise GraphInputError(f"vertex count must be nonnegative, got {n}")
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphInputError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows)


def as_mask(g: Graph, S) -> int:
    """Normalize a vertex-set argument (bitset int or iterable) to a bitset."""
    if isinstance(S, int):
        mask = S
    else:
        mask = mask_of(S)
    if mask < 0 or mask >> g.n:
        raise GraphInputError("vertex set contains indices outside 0..n-1")
    return mask


def density(g: Graph, S, T) -> Fraction:
    """Fraction of pairs in S x T that are edges, as an exact rational.

    S and T must be disjoint and nonempty.
    """
    s, t = as_mask(g, S), as_mask(g, T)
    if not s or not t:
        raise GraphInputError("density requires nonempty sets")
    if s & t:
        raise GraphInputError("density requires disjoint sets")
    e = sum((g.adj(v) & t).bit_count() for v in bits(s))
    return Fraction(e, s.bit_count() * t.bit_count())


def vertex_density(g: Graph, v: int, T) -> Fraction:
    """|N(v) ∩ T| / |T| as an exact rational; T may contain v."""
    t = as_mask(g, T)
    if not t:
        raise GraphInputError("vertex_density requires a nonempty set")
    return Fraction((g.adj(v) & t).bit_count(), t.bit_count())


def bfs_layers(g: Graph, source: int, restrict: int | None = None) -> list[int]:
    """BFS layers from ``source`` as bitsets; ``layers[d]`` holds distance-d vertices.

    ``restrict`` limits the search to a vertex subset (source always included).
    """
    universe = g.full_mask if restrict is None else (restrict | (1 << source))
    seen = 1 << source
    layers = [seen]
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj(v)
        nxt &= universe & ~seen
        if not nxt:
            break
        layers.append(nxt)
        seen |= nxt
        frontier = nxt
    return layers


def distance(g: Graph, u: int, v: int) -> int | None:
    """Shortest-path length between u and v; None when unreachable."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphInputError(f"vertex out of range for n={g.n}")
    if u == v:
        return 0
    seen = 1 << u
    frontier = seen
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for x in bits(frontier):
            nxt |= g.adj(x)
        nxt &= ~seen
        if nxt >> v & 1:
            return d
        seen |= nxt
        frontier = nxt
    return None


# -- edge-list interchange format ---------------------------------------
#
# Line 1: vertex count n.  Each following nonempty line: "u v" with 0-based
# endpoints.  '#' starts a comment anywhere on a line.


def parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise GraphInputError(f"line {lineno}: expected vertex count, got {line!r}")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphInputError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphInputError(f"line {lineno}: non-integer endpoint in {line!r}")
        edges.append((u, v))
    if n is None:
        raise GraphInputError("empty edge-list input")
    return build_graph(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
