"""Divergence and mutual-information kernels, all in nats.

Terms of the form ``0 * ln(0 / q)`` are taken as zero. A term ``p * ln(p / 0)``
with ``p > 0`` makes the divergence ``math.inf``; that infinity is the flag for
an absolute-continuity violation and is returned rather than raised.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy.special import rel_entr

from .core import INV_E, Channel, Distribution
from .errors import AlphaOutOfRange, LengthMismatch, SingularAtZero

E_MINUS_1 = math.e - 1.0


def _vec(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _same_length(a: np.ndarray, b: np.ndarray, what: str = "distributions") -> None:
    if a.shape != b.shape:
        raise LengthMismatch(f"{what} have lengths {a.shape[-1]} and {b.shape[-1]}")


def kl_divergence(P: Distribution, Q: Distribution) -> float:
    """Relative entropy ``D(P || Q)``; ``inf`` when P is not dominated by Q."""
    p, q = _vec(P), _vec(Q)
    _same_length(p, q)
    return float(rel_entr(p, q).sum())


def row_divergences(ch: Channel, Q: Distribution) -> np.ndarray:
    """``D(W[x] || Q)`` for every row x of the channel."""
    w, q = _vec(ch), _vec(Q)
    if w.shape[1] != q.size:
        raise LengthMismatch(f"channel has {w.shape[1]} outputs, distribution has {q.size}")
    return rel_entr(w, q).sum(axis=1)


def output_distribution(input: Distribution, ch: Channel) -> np.ndarray:
    p, w = _vec(input), _vec(ch)
    if p.size != w.shape[0]:
        raise LengthMismatch(f"input has {p.size} symbols, channel has {w.shape[0]} rows")
    return p @ w


def mutual_information(input: Distribution, ch: Channel) -> float:
    p, w = _vec(input), _vec(ch)
    q = output_distribution(p, w)
    d = rel_entr(w, q).sum(axis=1)
    # rows with zero input mass do not contribute, even if their divergence is infinite
    mask = p > 0
    return max(float(p[mask] @ d[mask]), 0.0)


def mixture(alpha: float, P1: Distribution, P2: Distribution) -> Distribution:
    """``alpha * P1 + (1 - alpha) * P2``."""
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha={alpha!r} is outside [0, 1]", alpha=alpha)
    p1, p2 = _vec(P1), _vec(P2)
    _same_length(p1, p2)
    return Distribution(alpha * p1 + (1.0 - alpha) * p2)


class FArgs(NamedTuple):
    alpha: float
    p1: float
    p2: float


def _check_unit(name: str, x: np.ndarray) -> None:
    if np.any((x < 0) | (x > 1)) or not np.all(np.isfinite(x)):
        raise ValueError(f"{name} must lie in [0, 1]")


def f_eval(alpha, p1, p2):
    """Per-letter contribution to ``dI/dalpha`` for a binary-input channel.

    ``f = p1 ln(p1/q) - p2 ln(p2/q) - (p1 - p2)`` with ``q = alpha p1 + (1-alpha) p2``.
    Summed over output letters this equals ``D(P1||Q) - D(P2||Q)``. At
    ``alpha = 1/e`` it is non-negative on the whole unit square.

    Works elementwise on arrays; returns a float for scalar input.
    """
    a, x, y = np.broadcast_arrays(_vec(alpha), _vec(p1), _vec(p2))
    _check_unit("alpha", a)
    _check_unit("p1", x)
    _check_unit("p2", y)
    q = a * x + (1.0 - a) * y
    with np.errstate(invalid="ignore"):
        out = rel_entr(x, q) - rel_entr(y, q) - (x - y)
    return float(out) if out.ndim == 0 else out


def d_mutual_info_binary(alpha: float, P1: Distribution, P2: Distribution) -> float:
    """Derivative of ``I(X;Y)`` with respect to the weight on ``P1``.

    Equal to ``D(P1 || Q) - D(P2 || Q)`` for ``Q = alpha P1 + (1 - alpha) P2``.
    At ``alpha`` in {0, 1} either divergence may be infinite; the sign of the
    resulting infinity is returned.
    """
    p1, p2 = _vec(P1), _vec(P2)
    _same_length(p1, p2)
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha={alpha!r} is outside [0, 1]", alpha=alpha)
    q = alpha * p1 + (1.0 - alpha) * p2
    d1 = float(rel_entr(p1, q).sum())
    d2 = float(rel_entr(p2, q).sum())
    if math.isinf(d1) and math.isinf(d2):
        return math.nan
    return d1 - d2


def f_partials(p1, p2):
    """First and second partial derivatives of ``f(1/e; p1, p2)`` in ``p1``.

    first  = ln(p1 / q) - (p1 - p2) / (e q),   q = p1/e + (1 - 1/e) p2
    second = p2 ((e-1)^2 p2 - p1) / (p1 (p1 + (e-1) p2)^2)

    The second derivative is positive below ``p1 = (e-1)^2 p2`` and negative
    above it. ``p1 = 0`` is a pole.
    """
    x, y = np.broadcast_arrays(_vec(p1), _vec(p2))
    _check_unit("p1", x)
    _check_unit("p2", y)
    if np.any(x == 0):
        raise SingularAtZero("partials of f are singular at p1 = 0")
    q = INV_E * x + (1.0 - INV_E) * y
    first = np.log(x / q) - INV_E * (x - y) / q
    second = y * (E_MINUS_1**2 * y - x) / (x * (x + E_MINUS_1 * y) ** 2)
    if first.ndim == 0:
        return float(first), float(second)
    return first, second
