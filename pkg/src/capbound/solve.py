"""Capacity solvers.

``blahut_arimoto`` handles any channel and stops on the duality gap
``max_x D(W[x] || Q_t) - I(P_t)``, which bounds the distance to capacity from
above. ``binary_optimal_input`` solves two-input channels by bisecting the
derivative of mutual information on ``[1/e, 1 - 1/e]``; the derivative is
positive at the left end and negative at the right end for any pair of
distinct rows, so the bracket never needs searching.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numba
import numpy as np

from .core import INV_E, THRESHOLD, Channel, Distribution
from .errors import IdenticalRows, LengthMismatch, NoConvergence, RhoOutOfRange
from .info import d_mutual_info_binary, mutual_information

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 100_000
ROW_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CapacityResult:
    capacity: float
    input: Distribution
    output: Distribution
    iterations: int
    gap: float
    trivial: bool = False


@dataclass(frozen=True)
class CostSpec:
    """Per-symbol input costs and a budget on their expectation."""

    costs: tuple[float, ...]
    budget: float

    def __post_init__(self):
        if any(c < 0 for c in self.costs) or self.budget < 0:
            raise ValueError("costs and budget must be non-negative")


class BinaryOptimum(NamedTuple):
    alpha_star: float
    capacity: float


@numba.njit(cache=True)
def _ba_kernel(w, tol, max_iter):
    m, n = w.shape
    p = np.full(m, 1.0 / m)
    q = np.empty(n)
    d = np.empty(m)
    gap = np.inf
    lower = 0.0
    for t in range(1, max_iter + 1):
        for j in range(n):
            s = 0.0
            for i in range(m):
                s += p[i] * w[i, j]
            q[j] = s
        upper = -np.inf
        lower = 0.0
        for i in range(m):
            s = 0.0
            for j in range(n):
                wij = w[i, j]
                if wij > 0.0:
                    if q[j] > 0.0:
                        s += wij * math.log(wij / q[j])
                    else:
                        s = np.inf
                        break
            d[i] = s
            if p[i] > 0.0:
                lower += p[i] * s
            if s > upper:
                upper = s
        gap = upper - lower
        if gap <= tol:
            return p, q, lower, t, gap, True
        total = 0.0
        for i in range(m):
            p[i] = p[i] * math.exp(d[i] - upper)
            total += p[i]
        for i in range(m):
            p[i] /= total
    return p, q, lower, max_iter, gap, False


def blahut_arimoto(
    ch: Channel, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> CapacityResult:
    """Capacity of a DMC by alternating maximization from the uniform input.

    Returns once the gap between the dual bound and the mutual information of
    the current input is at most ``tol``. ``trivial`` marks channels whose rows
    all coincide.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    w = np.ascontiguousarray(np.asarray(ch, dtype=float))
    p, q, lower, iters, gap, ok = _ba_kernel(w, float(tol), int(max_iter))
    if not ok:
        raise NoConvergence(
            f"gap {gap:.3e} after {iters} iterations", iterations=int(iters), gap=float(gap)
        )
    trivial = lower < tol and bool(np.all(np.abs(w - w[0]) <= ROW_TOL))
    return CapacityResult(
        capacity=max(float(lower), 0.0),
        input=Distribution(p),
        output=Distribution(q),
        iterations=int(iters),
        gap=max(float(gap), 0.0),
        trivial=trivial,
    )


def _distinct(p1: np.ndarray, p2: np.ndarray) -> None:
    if p1.shape != p2.shape:
        raise LengthMismatch(f"rows have lengths {p1.size} and {p2.size}")
    if np.max(np.abs(p1 - p2)) <= ROW_TOL:
        raise IdenticalRows("rows coincide; every input is optimal and capacity is 0")


def binary_optimal_input(
    P1: Distribution, P2: Distribution, tol: float = 1e-12
) -> BinaryOptimum:
    """Optimal weight on ``P1`` for the two-row channel ``[P1; P2]``.

    Bisection on ``[1/e, 1 - 1/e]`` until the bracket is narrower than ``tol``
    (or stops shrinking). The returned midpoint is strictly inside the bracket.
    """
    p1 = np.asarray(P1, dtype=float)
    p2 = np.asarray(P2, dtype=float)
    _distinct(p1, p2)
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo, hi = INV_E, THRESHOLD
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        g = d_mutual_info_binary(mid, p1, p2)
        if g > 0:
            lo = mid
        elif g < 0:
            hi = mid
        else:
            lo = hi = mid
            break
    alpha = 0.5 * (lo + hi)
    capacity = mutual_information(np.array([alpha, 1.0 - alpha]), np.vstack([p1, p2]))
    return BinaryOptimum(alpha, capacity)


def constrained_binary_capacity(
    P1: Distribution,
    P2: Distribution,
    rho: float,
    cost: CostSpec | None = None,
) -> BinaryOptimum:
    """Capacity of ``[P1; P2]`` when the ``P1`` symbol costs 1, the other 0.

    ``alpha_star`` is the probability of the costly symbol, capped by the
    budget ``rho``. Since the unconstrained optimum exceeds 1/e, any
    ``rho <= 1/e`` is returned unchanged.
    """
    if cost is not None:
        if tuple(float(c) for c in cost.costs) != (0.0, 1.0):
            raise ValueError("only the binary cost assignment (0, 1) is supported")
        if cost.budget != rho:
            raise ValueError("cost budget and rho disagree")
    if not 0.0 <= rho <= 1.0:
        raise RhoOutOfRange(f"rho={rho!r} is outside [0, 1]", rho=rho)
    unconstrained = binary_optimal_input(P1, P2)
    if rho < unconstrained.alpha_star:
        alpha = float(rho)
        w = np.vstack([np.asarray(P1, dtype=float), np.asarray(P2, dtype=float)])
        return BinaryOptimum(alpha, mutual_information(np.array([alpha, 1.0 - alpha]), w))
    return unconstrained

