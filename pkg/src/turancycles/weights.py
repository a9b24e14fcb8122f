"""Weightings of cycle blow-ups and when an unbalanced one wins.

For odd ell < k, a blow-up of the (ell+2)-cycle with part fractions
w_0..w_{ell+1} beats the balanced blow-up's walk bound as soon as

    w_0 * ... * w_{ell-1} * (w_ell * w_{ell+1})^((k-ell)/2) > (2/(ell+2))^k.

Optimizing the left side gives w_i = 1/k on the first ell parts and
(k-ell)/(2k) on the heavy adjacent pair, and reduces the comparison to the
sign of a single log-margin function of (k, ell).  Everything here is
evaluated in log space: raw products underflow doubles long before the
crossover regions of interest.

The simplex optimizer maximizes the blow-up's leading cycle-count
coefficient directly (any base length, any odd k) by projected gradient
ascent on the log of the trace objective, from the balanced start plus
seeded random restarts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .blowup import leading_coefficient
from .errors import GraphInputError

SIMPLEX_TOL = 1e-12


def _check_odd_pair(k: int, ell: int) -> None:
    if ell < 3 or ell % 2 == 0:
        raise GraphInputError(f"ell must be odd and >= 3, got {ell}")
    if k <= ell or k % 2 == 0:
        raise GraphInputError(f"k must be odd and > ell, got k={k}, ell={ell}")


def check_simplex(w: Sequence, tol: float = SIMPLEX_TOL) -> None:
    if any(x < 0 for x in w):
        raise GraphInputError("weights must be nonnegative")
    if abs(float(sum(Fraction(x) for x in w)) - 1.0) > tol:
        raise GraphInputError(f"weights must sum to 1, got {float(sum(map(float, w)))}")


def advantage_margin(k: int, ell: int) -> float:
    """(k-ell)*log((k-ell)/2) - k*log(2k/(ell+2)): the log-margin of the
    optimized weighting over the balanced walk bound (natural log)."""
    _check_odd_pair(k, ell)
    t = k - ell
    return t * math.log(t / 2) - k * math.log(2 * k / (ell + 2))


def optimized_weights(k: int, ell: int) -> tuple[Fraction, ...]:
    """The weights maximizing the patterned lower bound: 1/k on the first
    ell parts, (k-ell)/(2k) on the heavy adjacent pair.  Sums to 1 exactly."""
    _check_odd_pair(k, ell)
    heavy = Fraction(k - ell, 2 * k)
    return (Fraction(1, k),) * ell + (heavy, heavy)


def heavy_pair_weights(ell: int) -> tuple[Fraction, ...]:
    """A fixed k-independent family: (ell-2)/(2*ell*(ell+2)) on the first
    ell parts and 1/4 + 1/(ell+2) on the heavy pair.  Sums to 1 exactly and
    satisfies w_ell * w_{ell+1} > (2/(ell+2))^2 for every odd ell >= 3."""
    if ell < 3 or ell % 2 == 0:
        raise GraphInputError(f"ell must be odd and >= 3, got {ell}")
    light = Fraction(ell - 2, 2 * ell * (ell + 2))
    heavy = Fraction(1, 4) + Fraction(1, ell + 2)
    return (light,) * ell + (heavy, heavy)


def check_weight_advantage(w: Sequence, k: int, ell: int) -> tuple[bool, float]:
    """Compare the patterned product against (2/(ell+2))^k in log space.

    Returns (holds, log margin); a zero weight gives margin -inf.
    """
    _check_odd_pair(k, ell)
    if len(w) != ell + 2:
        raise GraphInputError(f"expected {ell + 2} weights, got {len(w)}")
    vals = [float(x) for x in w]
    if any(v < 0 for v in vals):
        raise GraphInputError("weights must be nonnegative")
    if min(vals) == 0.0:
        return (False, float("-inf"))
    lhs = sum(math.log(v) for v in vals[:ell])
    lhs += (k - ell) / 2 * (math.log(vals[ell]) + math.log(vals[ell + 1]))
    rhs = k * math.log(2 / (ell + 2))
    margin = lhs - rhs
    return (margin > 0, margin)


def monotone_from(ell: int) -> float:
    """The margin is increasing in k from ell + 4 + 8/(ell-2) onward."""
    return ell + 4 + 8 / (ell - 2)


@dataclass(frozen=True)
class ThresholdReport:
    ell: int
    k0: int | None
    f_values: tuple[tuple[int, float], ...]
    monotone_from: float


def crossover_search(ell: int, k_max: int) -> ThresholdReport:
    """Smallest odd k in (ell, k_max] with positive margin.

    Scans odd k upward; beyond the crossover it additionally samples larger
    odd k up to k_max and records their (still positive) margins.  A margin
    that is exactly zero in floating point counts as not positive.
    """
    if ell < 3 or ell % 2 == 0:
        raise GraphInputError(f"ell must be odd and >= 3, got {ell}")
    rows: list[tuple[int, float]] = []
    k0 = None
    k = ell + 2
    while k <= k_max:
        f = advantage_margin(k, ell)
        rows.append((k, f))
        if f > 0:
            k0 = k
            break
        k += 2
    if k0 is not None:
        span = max(2, (k_max - k0) // 20 // 2 * 2)
        k = k0 + span
        while k <= k_max:
            rows.append((k, advantage_margin(k, ell)))
            k += span
    return ThresholdReport(ell, k0, tuple(rows), monotone_from(ell))


def project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    idx = np.arange(1, len(v) + 1)
    cond = u + (1.0 - css) / idx > 0
    rho = int(np.nonzero(cond)[0][-1])
    lam = (1.0 - css[rho]) / (rho + 1)
    return np.maximum(v + lam, 0.0)


def _cycle_matrix(m: int) -> np.ndarray:
    a = np.zeros((m, m))
    for i in range(m):
        a[i, (i + 1) % m] = 1.0
        a[i, (i - 1) % m] = 1.0
    return a


def coefficient_gradient(m: int, w: Sequence[float], k: int) -> np.ndarray:
    """Analytic gradient of the leading coefficient in the weights.

    d/dw_j of trace((DA)^k)/(2k) equals (A (DA)^(k-1))_jj / 2.
    """
    a = _cycle_matrix(m)
    mat = np.diag(np.asarray(w, dtype=float)) @ a
    power = np.linalg.matrix_power(mat, k - 1)
    return np.diag(a @ power) / 2.0


@dataclass(frozen=True)
class OptimizeResult:
    weights: tuple[float, ...]
    coefficient: float
    converged: bool
    iterations: int
    restarts: int
    seed: int


def _log_objective(a: np.ndarray, w: np.ndarray, k: int) -> float:
    tr = np.trace(np.linalg.matrix_power(np.diag(w) @ a, k))
    if tr <= 0:
        return float("-inf")
    return math.log(tr)


def _ascend(a: np.ndarray, w0: np.ndarray, k: int, iterations: int) -> tuple[np.ndarray, float, bool]:
    m = len(w0)
    w = w0.copy()
    f = _log_objective(a, w, k)
    step = 0.1
    converged = False
    for _ in range(iterations):
        mat = np.diag(w) @ a
        power = np.linalg.matrix_power(mat, k - 1)
        tr = np.trace(mat @ power)
        if tr <= 0:
            break
        grad = k * np.diag(a @ power) / tr  # gradient of log trace
        # projected-gradient stationarity on the simplex
        pg = project_to_simplex(w + grad) - w
        if np.linalg.norm(pg) < 1e-12:
            converged = True
            break
        improved = False
        s = step
        for _ in range(60):
            cand = project_to_simplex(w + s * grad)
            fc = _log_objective(a, cand, k)
            if fc > f:
                w, f = cand, fc
                step = min(s * 2.0, 1e3)
                improved = True
                break
            s *= 0.5
        if not improved:
            converged = True
            break
    return w, f, converged


def optimize_coefficient(
    m: int,
    k: int,
    iterations: int = 600,
    seed: int = 0,
    restarts: int = 8,
) -> OptimizeResult:
    """Maximize the leading coefficient over the weight simplex.

    Projected gradient ascent on the log objective from the balanced start
    plus ``restarts`` seeded Dirichlet starts.  The balanced point is a
    critical point by symmetry, so the restarts are what detect unbalanced
    optima when they exist.
    """
    if m < 3:
        raise GraphInputError(f"base length must be >= 3, got {m}")
    if k < m or k % 2 == 0:
        raise GraphInputError(f"k must be odd and >= base length, got k={k}, m={m}")
    a = _cycle_matrix(m)
    rng = np.random.default_rng(seed)
    starts = [np.full(m, 1.0 / m)]
    for _ in range(restarts):
        starts.append(rng.dirichlet(np.ones(m)))
    best_w, best_f, best_conv = None, float("-inf"), False
    for w0 in starts:
        w, f, conv = _ascend(a, w0, k, iterations)
        if f > best_f:
            best_w, best_f, best_conv = w, f, conv
    coeff = leading_coefficient(m, best_w, k)
    balanced = leading_coefficient(m, [1.0 / m] * m, k)
    if balanced > coeff:
        best_w = np.full(m, 1.0 / m)
        coeff = balanced
    return OptimizeResult(
        weights=tuple(float(x) for x in best_w),
        coefficient=coeff,
        converged=best_conv,
        iterations=iterations,
        restarts=restarts,
        seed=seed,
    )
