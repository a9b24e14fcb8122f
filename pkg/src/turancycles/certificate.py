"""The good-sequence weight certificate for graphs of odd girth at least k.

A *good sequence* is an ordering (z_0, ..., z_{k-1}) of a k-cycle's vertices
whose third and fourth entries are swapped relative to cycle order, i.e.
z_0 z_1 z_3 z_2 z_4 ... z_{k-1} traverses the cycle.  Each prefix of a good
sequence determines an *extension set*: the vertices that could come next in
the random process that grows such sequences.  The reciprocal product of the
extension-set sizes is the sequence's weight, which is exactly the
probability of sampling that sequence, so the weights of all good sequences
sum to at most one.  Summing over the k same-orientation sequences of a fixed
cycle turns this into a per-cycle upper bound on the number of k-cycles, and
an averaging step turns the per-cycle data into a global bound controlled by
the attachment ratio M (the maximum fraction of vertices with exactly two
neighbours on a k-cycle).

All weights and ratios here are exact rationals; the bound comparisons in the
tests are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cycles import iter_cycles, shortest_odd_cycle
from .errors import CounterexampleError, GraphInputError, ResourceLimitError
from .graph import Graph, bfs_layers, bits, mask_of

_ENUMERATION_GUARD = 20  # sum_of_good_weights is exponential in spirit; keep desk scale


def odd_girth_at_least(g: Graph, k: int) -> bool:
    """Gatekeeper for everything below: no odd cycle shorter than k."""
    if k % 2 == 0:
        raise GraphInputError(f"odd girth threshold must be odd, got {k}")
    og = shortest_odd_cycle(g)
    return og is None or og >= k


def cycle_order(seq: tuple[int, ...]) -> tuple[int, ...]:
    """Reorder a good sequence into cycle order (swap entries 2 and 3)."""
    if len(seq) < 5:
        raise GraphInputError(f"sequences need at least 5 vertices, got {len(seq)}")
    return (seq[0], seq[1], seq[3], seq[2]) + tuple(seq[4:])


def is_good_sequence(g: Graph, seq: tuple[int, ...]) -> bool:
    """True iff seq has distinct vertices and its cycle order is a cycle of g."""
    if len(set(seq)) != len(seq):
        return False
    co = cycle_order(seq)
    return all(g.has_edge(co[i], co[(i + 1) % len(co)]) for i in range(len(co)))


def same_orientation_sequences(cycle: tuple[int, ...]) -> list[tuple[int, ...]]:
    """The k good sequences that traverse the cycle in its given orientation,
    one rooted at each rotation."""
    k = len(cycle)
    out = []
    for j in range(k):
        rot = tuple(cycle[(j + t) % k] for t in range(k))
        out.append((rot[0], rot[1], rot[3], rot[2]) + rot[4:])
    return out


def all_good_sequences(cycle: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All 2k good sequences of a cycle (both orientations, all rotations)."""
    rev = (cycle[0],) + tuple(reversed(cycle[1:]))
    return same_orientation_sequences(cycle) + same_orientation_sequences(rev)


def _is_induced_path(g: Graph, verts: tuple[int, ...]) -> bool:
    n = len(verts)
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = g.has_edge(verts[i], verts[j])
            if adjacent != (j == i + 1):
                return False
    return True


def extension_sets(g: Graph, seq: tuple[int, ...]) -> list[int]:
    """The k extension sets of a good sequence, as bitsets.

    Index i holds the candidates for position i given the prefix
    (z_0, ..., z_{i-1}): the whole vertex set, then N(z_0), then the
    non-neighbours of z_0 at distance exactly two from z_1, then
    N(z_1) ∩ N(z_2), then induced-path extensions, and finally the
    induced-cycle completions.
    """
    if not is_good_sequence(g, seq):
        raise GraphInputError(f"not a good sequence: {seq}")
    k = len(seq)
    co = cycle_order(seq)
    full = g.full_mask
    sets = [full, g.adj(seq[0])]

    # distance is measured in the whole graph
    layers = bfs_layers(g, seq[1])
    dist2 = layers[2] if len(layers) > 2 else 0
    sets.append(dist2 & ~g.adj(seq[0]))

    sets.append(g.adj(seq[1]) & g.adj(seq[2]))

    for i in range(4, k):
        prefix = co[:i]
        if not _is_induced_path(g, prefix):
            sets.append(0)
            continue
        prefix_mask = mask_of(prefix)
        if i < k - 1:
            # extend to an induced path: adjacent to the end, to nothing else
            cand = g.adj(prefix[-1]) & ~prefix_mask
            for p in prefix[:-1]:
                cand &= ~g.adj(p)
        else:
            # close to an induced cycle: adjacent to both ends only
            cand = g.adj(prefix[-1]) & g.adj(prefix[0]) & ~prefix_mask
            for p in prefix[1:-1]:
                cand &= ~g.adj(p)
        sets.append(cand)
    return sets


def sequence_weight(a_sets: list[int]) -> Fraction:
    """Product of reciprocals of the extension-set sizes, exact."""
    w = Fraction(1)
    for i, s in enumerate(a_sets):
        size = s.bit_count()
        if size == 0:
            raise GraphInputError(f"extension set {i} is empty; sequence not realizable")
        w /= size
    return w


def sequence_sizes(g: Graph, seq: tuple[int, ...]) -> list[int]:
    return [s.bit_count() for s in extension_sets(g, seq)]


def per_cycle_bound(g: Graph, cycle: tuple[int, ...]) -> Fraction:
    """Upper bound on the total number of k-cycles derived from this cycle:
    the reciprocal of twice the weight sum of its same-orientation sequences."""
    total = Fraction(0)
    for seq in same_orientation_sequences(cycle):
        total += sequence_weight(extension_sets(g, seq))
    return 1 / (2 * total)


def sum_of_good_weights(g: Graph, k: int) -> Fraction:
    """Exact sum of the weights of all good sequences (both orientations).

    At most one whenever the odd girth is at least k.  Guarded to small
    graphs since it enumerates every k-cycle.
    """
    if g.n > _ENUMERATION_GUARD:
        raise ResourceLimitError(
            f"sum_of_good_weights enumerates all cycles; n={g.n} exceeds {_ENUMERATION_GUARD}"
        )
    total = Fraction(0)
    for cyc in iter_cycles(g, k):
        for seq in all_good_sequences(cyc):
            total += sequence_weight(extension_sets(g, seq))
    return total


def attachment_set(g: Graph, cycle: tuple[int, ...]) -> int:
    """Bitset of vertices with exactly two neighbours on the cycle."""
    cmask = mask_of(cycle)
    out = 0
    for v in range(g.n):
        if (g.adj(v) & cmask).bit_count() == 2:
            out |= 1 << v
    return out


@dataclass(frozen=True)
class AttachmentReport:
    """Maximum attachment ratio |U(C)|/n over the examined k-cycles."""

    best_cycle: tuple[int, ...] | None
    m_value: Fraction | None
    cycles_examined: int
    exhaustive: bool


def max_attachment_ratio(
    g: Graph, k: int, budget: int = 10**6, seed: int = 0
) -> AttachmentReport:
    """Maximise |attachment set|/n over k-cycles.

    Enumerates cycles in canonical order up to ``budget``.  If the budget is
    hit, a seeded sample of further cycles (from a random vertex relabelling)
    can only improve the reported maximum, and the result is flagged
    non-exhaustive: it is then a lower bound on the true ratio and must not
    certify upper bounds built from it.
    """
    best: Fraction | None = None
    best_cycle = None
    examined = 0
    exhausted = True
    for cyc in iter_cycles(g, k):
        if examined >= budget:
            exhausted = False
            break
        examined += 1
        ratio = Fraction(attachment_set(g, cyc).bit_count(), g.n)
        if best is None or ratio > best:
            best, best_cycle = ratio, cyc
    if not exhausted:
        rng = random.Random(seed)
        perm = list(range(g.n))
        rng.shuffle(perm)
        inv = [0] * g.n
        for i, p in enumerate(perm):
            inv[p] = i
        relabeled = Graph(
            g.n,
            [
                sum(1 << perm[u] for u in bits(g.adj(inv[v])))
                for v in range(g.n)
            ],
        )
        for cyc in iter_cycles(relabeled, k):
            if examined >= 2 * budget:
                break
            examined += 1
            orig = tuple(inv[v] for v in cyc)
            ratio = Fraction(attachment_set(g, orig).bit_count(), g.n)
            if best is None or ratio > best:
                best, best_cycle = ratio, orig
    return AttachmentReport(best_cycle, best, examined, exhausted)


def distance_two_pattern_check(g: Graph, cycle: tuple[int, ...]) -> tuple[bool, list]:
    """Check, for every vertex, that at most three cycle vertices sit at
    distance exactly two and that no two of those are adjacent.

    Runs even when the odd-girth precondition fails (diagnostic mode); the
    violation list is empty exactly when the property holds.
    """
    violations = []
    dist2_of = []
    for c in cycle:
        layers = bfs_layers(g, c)
        dist2_of.append(layers[2] if len(layers) > 2 else 0)
    for w in range(g.n):
        near = [c for c, d2 in zip(cycle, dist2_of) if d2 >> w & 1]
        if len(near) > 3:
            violations.append((w, "more than three cycle vertices at distance two", near))
        for i in range(len(near)):
            for j in range(i + 1, len(near)):
                if g.has_edge(near[i], near[j]):
                    violations.append((w, "adjacent distance-two pair", (near[i], near[j])))
    return (not violations, violations)


@dataclass(frozen=True)
class AuditReport:
    contributions: tuple[Fraction, ...]  # per vertex
    total: Fraction
    u_mask: int


def contribution_audit(g: Graph, cycle: tuple[int, ...]) -> AuditReport:
    """Per-vertex membership audit of the certificate sum.

    For each vertex w, add 1/2 for each same-orientation sequence whose
    second extension set contains w and 1 for each membership in a later
    extension set.  Vertices with two neighbours on the cycle may contribute
    at most k-1; all others at most k-2; the total is then at most
    n(k-2) + |U(C)|.  A violated cap falsifies the certificate argument, so
    it raises CounterexampleError instead of returning.
    """
    k = len(cycle)
    n = g.n
    halves = [0] * n  # contributions counted in half units
    for seq in same_orientation_sequences(cycle):
        sets = extension_sets(g, seq)
        for w in bits(sets[1]):
            halves[w] += 1
        for i in range(2, k):
            for w in bits(sets[i]):
                halves[w] += 2
    u_mask = attachment_set(g, cycle)
    for w in range(n):
        cap = k - 1 if u_mask >> w & 1 else k - 2
        if halves[w] > 2 * cap:
            raise CounterexampleError(
                f"vertex {w} contributes {Fraction(halves[w], 2)} > cap {cap}",
                details={
                    "vertex": w,
                    "cycle": cycle,
                    "contribution": Fraction(halves[w], 2),
                    "cap": cap,
                    "in_attachment_set": bool(u_mask >> w & 1),
                },
            )
    total = Fraction(sum(halves), 2)
    limit = n * (k - 2) + u_mask.bit_count()
    if total > limit:
        raise CounterexampleError(
            f"audit total {total} exceeds n(k-2)+|U| = {limit}",
            details={"cycle": cycle, "total": total, "limit": limit},
        )
    return AuditReport(tuple(Fraction(h, 2) for h in halves), total, u_mask)


def cycle_count_bound(n: int, k: int, m_ratio) -> Fraction:
    """Global bound on the number of k-cycles given the attachment ratio:
    (1 - (1 - M)/(k - 1))^(k-1) * n^k / k^k, exact for rational M."""
    m_ratio = Fraction(m_ratio)
    if not 0 <= m_ratio <= 1:
        raise GraphInputError(f"attachment ratio must lie in [0, 1], got {m_ratio}")
    factor = (1 - (1 - m_ratio) / (k - 1)) ** (k - 1)
    return factor * Fraction(n**k, k**k)


@dataclass(frozen=True)
class CertificateReport:
    """Everything the per-cycle certificate derives from one cycle."""

    cycle: tuple[int, ...]
    a_sizes: tuple[tuple[int, ...], ...]  # a_sizes[i][j] = |A_i(D_j)|
    weights: tuple[Fraction, ...]  # w(D_j)
    u_size: int
    per_cycle_bound: Fraction


def certificate_report(g: Graph, cycle: tuple[int, ...]) -> CertificateReport:
    k = len(cycle)
    seqs = same_orientation_sequences(cycle)
    size_cols = [sequence_sizes(g, seq) for seq in seqs]
    weights = tuple(sequence_weight(extension_sets(g, seq)) for seq in seqs)
    a_sizes = tuple(tuple(size_cols[j][i] for j in range(k)) for i in range(k))
    bound = 1 / (2 * sum(weights))
    return CertificateReport(cycle, a_sizes, weights, attachment_set(g, cycle).bit_count(), bound)
