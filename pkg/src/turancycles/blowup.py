"""Cycle blow-ups: construction, analytic cycle counting, and bound formulas.

The analytic counter never materializes the blow-up.  Every k-cycle projects
to a rooted, oriented closed k-walk in the base cycle, and a walk visiting
part i exactly c_i times lifts to falling_factorial(n_i, c_i) injective
assignments per part; summing the product over all closed walks counts every
cycle exactly 2k times.  The walk sum is grouped by visit profile with a
dynamic program over (step, base vertex, visit counts).  This identity is
validated against brute-force counting on materialized blow-ups before it is
trusted anywhere else (see tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import GraphInputError, InternalConsistencyError, ResourceLimitError
from .graph import Graph, build_graph

_MAX_BASE = 13
_MAX_K = 25


@dataclass(frozen=True)
class BlowupSpec:
    """Base cycle length plus one integer part size per base vertex."""

    base_length: int
    part_sizes: tuple[int, ...]

    def __post_init__(self):
        if self.base_length < 3:
            raise GraphInputError(f"base length must be >= 3, got {self.base_length}")
        object.__setattr__(self, "part_sizes", tuple(int(s) for s in self.part_sizes))
        if len(self.part_sizes) != self.base_length:
            raise GraphInputError(
                f"expected {self.base_length} part sizes, got {len(self.part_sizes)}"
            )
        if any(s < 0 for s in self.part_sizes):
            raise GraphInputError("part sizes must be nonnegative")

    @property
    def total(self) -> int:
        return sum(self.part_sizes)

    def balanced(self) -> bool:
        return max(self.part_sizes) - min(self.part_sizes) <= 1

    def offsets(self) -> tuple[int, ...]:
        """Starting vertex index of each part in the materialized graph."""
        off = []
        acc = 0
        for s in self.part_sizes:
            off.append(acc)
            acc += s
        return tuple(off)


def materialize(spec: BlowupSpec) -> Graph:
    """Build the blow-up graph: independent parts in contiguous index ranges,
    complete bipartite between cyclically adjacent parts."""
    if spec.total < 1:
        raise GraphInputError("cannot materialize an empty blow-up")
    off = spec.offsets()
    m = spec.base_length
    edges = []
    for i in range(m):
        j = (i + 1) % m
        if j == i:
            continue
        for a in range(spec.part_sizes[i]):
            for b in range(spec.part_sizes[j]):
                edges.append((off[i] + a, off[j] + b))
    return build_graph(spec.total, edges)


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def exact_blowup_cycle_count(spec: BlowupSpec, k: int) -> int:
    """Exact number of k-cycles in the blow-up, for odd k, via the walk DP."""
    if k % 2 == 0:
        raise GraphInputError(f"analytic count requires odd k, got {k}")
    if k < 3:
        raise GraphInputError(f"k must be at least 3, got {k}")
    m = spec.base_length
    if m > _MAX_BASE or k > _MAX_K:
        raise ResourceLimitError(
            f"walk DP supports base <= {_MAX_BASE} and k <= {_MAX_K}; got base={m}, k={k}"
        )
    sizes = spec.part_sizes
    caps = tuple(min(k, s) for s in sizes)

    total = 0
    zero = (0,) * m
    for b0 in range(m):
        if sizes[b0] == 0:
            continue
        start = list(zero)
        start[b0] = 1
        states: dict[tuple[int, tuple[int, ...]], int] = {(b0, tuple(start)): 1}
        for _ in range(k - 1):
            nxt: dict[tuple[int, tuple[int, ...]], int] = {}
            for (cur, prof), ways in states.items():
                for nb in ((cur - 1) % m, (cur + 1) % m):
                    if prof[nb] >= caps[nb]:
                        continue
                    np_ = list(prof)
                    np_[nb] += 1
                    key = (nb, tuple(np_))
                    nxt[key] = nxt.get(key, 0) + ways
            states = nxt
        for (cur, prof), ways in states.items():
            if (cur - b0) % m in (1, m - 1):
                lifts = 1
                for i in range(m):
                    if prof[i]:
                        lifts *= _falling(sizes[i], prof[i])
                total += ways * lifts

    q, r = divmod(total, 2 * k)
    if r:
        raise InternalConsistencyError(
            f"walk total {total} not divisible by 2k={2 * k}; DP is broken"
        )
    return q


def leading_coefficient(m: int, w: Sequence[float], k: int) -> float:
    """Limit of (k-cycle count)/n^k for blow-ups of the m-cycle with part
    fractions w: trace((diag(w) @ A)^k) / (2k)."""
    if m < 3:
        raise GraphInputError(f"base length must be >= 3, got {m}")
    if m > 64:
        raise ResourceLimitError(f"leading_coefficient supports base <= 64, got {m}")
    if k % 2 == 0 or k < 3:
        raise GraphInputError(f"k must be odd and >= 3, got {k}")
    if len(w) != m:
        raise GraphInputError(f"expected {m} weights, got {len(w)}")
    a = np.zeros((m, m))
    for i in range(m):
        a[i, (i + 1) % m] = 1.0
        a[i, (i - 1) % m] = 1.0
    mat = np.diag(np.asarray(w, dtype=float)) @ a
    power = np.linalg.matrix_power(mat, k)
    return float(np.trace(power)) / (2 * k)


def cycle_lower_bound(w: Sequence, ell: int, k: int, n: int):
    """Leading term of the patterned-cycle count in a blow-up of the
    (ell+2)-cycle: one vertex in each of the first ell parts and (k-ell)/2 in
    each of the last two.  Exact when the weights are exact."""
    if ell < 3 or ell % 2 == 0:
        raise GraphInputError(f"ell must be odd and >= 3, got {ell}")
    if k <= ell or k % 2 == 0:
        raise GraphInputError(f"k must be odd and > ell, got k={k}, ell={ell}")
    if len(w) != ell + 2:
        raise GraphInputError(f"expected {ell + 2} weights, got {len(w)}")
    half = (k - ell) // 2
    prod = math.prod(w[:ell]) * (w[ell] * w[ell + 1]) ** half
    return prod * n**k


def walk_upper_bound(n: int, ell: int, k: int) -> Fraction:
    """Walk-count upper bound on the k-cycles of the balanced blow-up of the
    (ell+2)-cycle: (n/(ell+2) + 1) * (2n/(ell+2) + 2)^(k-1), exact."""
    m = ell + 2
    return (Fraction(n, m) + 1) * (2 * Fraction(n, m) + 2) ** (k - 1)
