"""Channels built to order.

The Z-channel family sweeps the optimal mass of its clean symbol from 1/2
(noiseless) up towards, but never reaching, 1 - 1/e (as the noisy symbol's
row collapses onto the clean one). Reflecting the family covers
``(1/e, 1/2]``. Any distribution with a subset of symbols whose total mass
falls strictly inside ``(1/e, 1 - 1/e)`` is then made capacity-achieving by
giving every symbol in the subset one base row and every other symbol the
other base row.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import INV_E, THRESHOLD, Channel, Distribution
from .errors import DeltaOutOfRange, Infeasible, TargetOutOfRange, TooManySymbols
from .solve import binary_optimal_input

MAX_SYMBOLS = 24
DEFAULT_TOL = 1e-9
MAX_BISECTIONS = 200

CLEAN_ROW = (1.0, 0.0)


@dataclass(frozen=True)
class ZChannel:
    """Two-input channel with one clean input and one noisy input.

    The noisy input is received as the clean input's output letter with
    probability ``delta``: the clean row is ``(1, 0)``, the noisy row
    ``(delta, 1 - delta)``. As ``delta -> 1`` the rows merge and capacity
    vanishes.
    """

    delta: float
    noisy_index: int = 1

    def __post_init__(self):
        _check_delta(self.delta)
        if self.noisy_index not in (0, 1):
            raise ValueError("noisy_index must be 0 or 1")

    @property
    def channel(self) -> Channel:
        noisy = (self.delta, 1.0 - self.delta)
        rows = [CLEAN_ROW, noisy] if self.noisy_index == 1 else [noisy, CLEAN_ROW]
        return Channel(rows)


@dataclass(frozen=True)
class ConstructionResult:
    channel: Channel
    subset: tuple[int, ...]
    mass: float
    base: ZChannel

    @property
    def complement_mass(self) -> float:
        return 1.0 - self.mass


def _check_delta(delta: float) -> None:
    if not 0.0 <= delta < 1.0:
        raise DeltaOutOfRange(f"delta={delta!r} is outside [0, 1)", delta=delta)


def z_channel(delta: float, noisy_index: int = 1) -> Channel:
    return ZChannel(delta, noisy_index).channel


def z_optimal_clean_prob(delta: float) -> float:
    """Probability the capacity-achieving input puts on the clean symbol."""
    _check_delta(delta)
    return binary_optimal_input(CLEAN_ROW, (delta, 1.0 - delta)).alpha_star


def solve_delta_for_target(p_target: float, tol: float = DEFAULT_TOL) -> ZChannel:
    """Z-channel whose optimal input puts mass ``p_target`` on symbol 0.

    Targets of at least 1/2 make symbol 0 the clean one; smaller targets make
    it the noisy one, so the clean symbol needs ``1 - p_target``. ``delta`` is
    then found by bisection, the clean mass being increasing in ``delta``.
    """
    if not INV_E < p_target < THRESHOLD:
        raise TargetOutOfRange(
            f"target {p_target!r} is not strictly inside (1/e, 1 - 1/e)", target=p_target
        )
    if p_target >= 0.5:
        clean, noisy_index = p_target, 1
    else:
        clean, noisy_index = 1.0 - p_target, 0

    lo, hi = 0.0, 1.0
    best, best_err = 0.0, abs(z_optimal_clean_prob(0.0) - clean)
    for _ in range(MAX_BISECTIONS):
        if best_err <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        got = z_optimal_clean_prob(mid)
        err = abs(got - clean)
        if err < best_err:
            best, best_err = mid, err
        if got < clean:
            lo = mid
        else:
            hi = mid
    return ZChannel(best, noisy_index)


def subset_mass(P: Distribution, subset) -> float:
    p = np.asarray(P, dtype=float)
    return math.fsum(p[list(subset)].tolist())


def find_subset(P: Distribution) -> tuple[int, ...]:
    """Smallest (then lexicographically first) subset with mass in ``(1/e, 1 - 1/e)``."""
    p = np.asarray(P, dtype=float)
    m = p.size
    if m > MAX_SYMBOLS:
        raise TooManySymbols(f"{m} symbols exceeds the enumeration limit {MAX_SYMBOLS}", m=m)
    values = p.tolist()
    for size in range(1, m):
        for subset in combinations(range(m), size):
            mass = math.fsum(values[i] for i in subset)
            if INV_E < mass < THRESHOLD:
                return subset
    raise Infeasible("no subset of symbols has total mass strictly inside (1/e, 1 - 1/e)")


def construct_channel(
    P: Distribution, subset=None, tol: float = DEFAULT_TOL
) -> ConstructionResult:
    """Channel for which ``P`` is a capacity-achieving input.

    Symbols in ``subset`` (found automatically when omitted) share the base
    row of input 0, all other symbols share the base row of input 1. Mutual
    information of a two-row-type channel depends on the input only through
    the mass of each group, so ``P`` is optimal exactly when its subset mass
    is the base channel's optimal mass for input 0.
    """
    p = np.asarray(P, dtype=float)
    if subset is None:
        subset = find_subset(p)
    else:
        subset = tuple(sorted(set(int(i) for i in subset)))
        if not subset or any(i < 0 or i >= p.size for i in subset):
            raise ValueError(f"subset indices must lie in [0, {p.size})")
    mass = subset_mass(p, subset)
    if not INV_E < mass < THRESHOLD:
        raise Infeasible(f"subset {list(subset)} has mass {mass!r}, outside (1/e, 1 - 1/e)")
    base = solve_delta_for_target(mass, tol)
    w = base.channel.matrix
    in_subset = np.zeros(p.size, dtype=bool)
    in_subset[list(subset)] = True
    rows = np.where(in_subset[:, None], w[0], w[1])
    return ConstructionResult(Channel(rows), subset, mass, base)
