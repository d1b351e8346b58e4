"""Information-ball view of capacity.

Capacity is the smallest radius, in relative entropy, of a ball that covers
every row of the channel; its center is the optimal output distribution.
These helpers evaluate the radius at a candidate center, check a solver's
output against that picture, and recover the row weights that express the
center as a mixture of rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import Channel, Distribution
from .errors import LengthMismatch, NonUnique, ResidualTooLarge
from .info import row_divergences
from .solve import CapacityResult

SUPPORT_THRESHOLD = 1e-7
RANK_RTOL = 1e-10
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class KktReport:
    radius: float
    divergences: tuple[float, ...]
    support: tuple[int, ...]
    max_violation: float
    passed: bool


class MixtureFit(NamedTuple):
    weights: tuple[float, ...]
    residual: float


def dual_radius(ch: Channel, Q: Distribution) -> float:
    """Largest divergence from a row of ``ch`` to ``Q``; ``inf`` if some row escapes Q's support."""
    return float(np.max(row_divergences(ch, Q)))


def kkt_verify(
    ch: Channel,
    result: CapacityResult,
    tol: float,
    support_threshold: float = SUPPORT_THRESHOLD,
) -> KktReport:
    """Check a capacity certificate against the equalizer conditions.

    Every row must lie within ``C + tol`` of the output distribution, rows
    carrying input mass above ``support_threshold`` must lie at least
    ``C - tol`` away, and the radius must match ``C`` within ``tol``.
    ``max_violation`` is how far the worst condition overshoots ``tol``.
    """
    d = row_divergences(ch, result.output)
    c = result.capacity
    p = np.asarray(result.input)
    if p.size != d.size:
        raise LengthMismatch("result input does not match channel rows")
    support = np.flatnonzero(p > support_threshold)
    radius = float(np.max(d))

    excess = [float(np.max(d - c)) - tol, abs(radius - c) - tol]
    if support.size:
        excess.append(float(np.max(c - d[support])) - tol)
    violation = max(0.0, *excess)
    if not np.isfinite(radius):
        violation = np.inf
    return KktReport(
        radius=radius,
        divergences=tuple(float(x) for x in d),
        support=tuple(int(i) for i in support),
        max_violation=float(violation),
        passed=violation == 0.0,
    )


def mixture_coefficients(ch: Channel, Q: Distribution) -> MixtureFit:
    """Weights ``a`` with ``sum(a) = 1`` and ``a @ W = Q``.

    The affine constraint is eliminated against the last row, leaving an
    ordinary least-squares problem. Raises ``NonUnique`` when the rows are
    affinely dependent (cloned rows, or more rows than the output simplex
    can hold) and ``ResidualTooLarge`` when ``Q`` is off their affine hull.
    """
    w = np.asarray(ch, dtype=float)
    q = np.asarray(Q, dtype=float)
    if q.size != w.shape[1]:
        raise LengthMismatch(f"channel has {w.shape[1]} outputs, distribution has {q.size}")
    last = w[-1]
    A = (w[:-1] - last).T
    b = q - last
    sv = np.linalg.svd(A, compute_uv=False)
    rank = int(np.sum(sv > RANK_RTOL * sv[0])) if sv.size and sv[0] > 0 else 0
    if rank < A.shape[1]:
        raise NonUnique(
            f"rows span an affine space of dimension {rank} < {A.shape[1]}", rank=rank
        )
    head, *_ = np.linalg.lstsq(A, b, rcond=None)
    weights = np.append(head, 1.0 - head.sum())
    residual = float(np.linalg.norm(weights @ w - q))
    if residual > RESIDUAL_TOL:
        raise ResidualTooLarge(f"residual {residual:.3e} exceeds {RESIDUAL_TOL:g}", residual=residual)
    return MixtureFit(tuple(float(x) for x in weights), residual)
