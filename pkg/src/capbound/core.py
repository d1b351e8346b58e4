"""Validated probability vectors and row-stochastic channel matrices.

Both types hold read-only float64 arrays and support ``np.asarray`` so the
numeric kernels can work on plain arrays. Nothing here renormalizes: input
that is off the simplex by more than ``SUM_TOL`` is rejected.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyInput,
    NegativeEntry,
    RaggedMatrix,
    RowNotDistribution,
    SumNotOne,
    TooFewColumns,
    TooFewRows,
)

SUM_TOL = 1e-12

#: 1/e and 1 - 1/e, the two ends of the admissible interval for optimal input masses.
INV_E = 1.0 / math.e
THRESHOLD = 1.0 - INV_E


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _check_simplex(p: np.ndarray) -> None:
    if p.size == 0:
        raise EmptyInput("distribution has no entries")
    if not np.all(np.isfinite(p)):
        raise NegativeEntry("distribution has non-finite entries")
    neg = np.flatnonzero(p < 0)
    if neg.size:
        i = int(neg[0])
        raise NegativeEntry(f"entry {i} is negative ({p[i]!r})", index=i, value=float(p[i]))
    total = math.fsum(p.tolist())
    deviation = total - 1.0
    if abs(deviation) > SUM_TOL:
        raise SumNotOne(f"entries sum to {total!r}", deviation=deviation)


class Distribution:
    """A point on the probability simplex.

    >>> Distribution([0.25, 0.75]).p
    array([0.25, 0.75])
    """

    __slots__ = ("_p",)

    def __init__(self, p: Iterable[float]) -> None:
        arr = np.array(list(p) if not isinstance(p, np.ndarray) else p, dtype=float)
        if arr.ndim != 1:
            raise EmptyInput("distribution must be one-dimensional")
        _check_simplex(arr)
        self._p = _readonly(arr)

    @property
    def p(self) -> np.ndarray:
        return self._p

    def __len__(self) -> int:
        return self._p.size

    def __getitem__(self, i):
        return self._p[i]

    def __iter__(self):
        return iter(self._p)

    def __array__(self, dtype=None, copy=None):
        if dtype is None or np.dtype(dtype) == self._p.dtype:
            return self._p if not copy else self._p.copy()
        return self._p.astype(dtype)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return np.array_equal(self._p, other._p)

    def __hash__(self) -> int:
        return hash(self._p.tobytes())

    def __repr__(self) -> str:
        return f"Distribution({self._p.tolist()!r})"

    def tolist(self) -> list[float]:
        return self._p.tolist()


class Channel:
    """Row-stochastic transition matrix ``W[x, y] = P(y | x)``.

    Rows are input symbols, columns output symbols. At least two of each.
    """

    __slots__ = ("_w",)

    def __init__(self, rows: Sequence[Sequence[float]] | np.ndarray) -> None:
        if isinstance(rows, np.ndarray):
            if rows.ndim != 2:
                raise RaggedMatrix("channel matrix must be two-dimensional")
            w = np.array(rows, dtype=float)
        else:
            rows = [list(r) for r in rows]
            widths = {len(r) for r in rows}
            if len(widths) > 1:
                raise RaggedMatrix(f"rows have differing lengths {sorted(widths)}")
            w = np.array(rows, dtype=float).reshape(len(rows), -1 if rows else 0)
        if w.shape[0] < 2:
            raise TooFewRows(f"channel needs at least 2 input symbols, got {w.shape[0]}")
        if w.shape[1] < 2:
            raise TooFewColumns(f"channel needs at least 2 output symbols, got {w.shape[1]}")
        for i, row in enumerate(w):
            try:
                _check_simplex(row)
            except (NegativeEntry, SumNotOne, EmptyInput) as exc:
                raise RowNotDistribution(
                    f"row {i}: {exc}", row=i, cause=exc.kind, **exc.details
                ) from exc
        self._w = _readonly(w)

    @property
    def matrix(self) -> np.ndarray:
        return self._w

    @property
    def m(self) -> int:
        return self._w.shape[0]

    @property
    def n(self) -> int:
        return self._w.shape[1]

    @property
    def rows(self) -> tuple[Distribution, ...]:
        return tuple(Distribution(r) for r in self._w)

    def __array__(self, dtype=None, copy=None):
        if dtype is None or np.dtype(dtype) == self._w.dtype:
            return self._w if not copy else self._w.copy()
        return self._w.astype(dtype)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Channel):
            return NotImplemented
        return np.array_equal(self._w, other._w)

    def __hash__(self) -> int:
        return hash((self._w.shape, self._w.tobytes()))

    def __repr__(self) -> str:
        return f"Channel({self._w.tolist()!r})"

    def tolist(self) -> list[list[float]]:
        return self._w.tolist()

    def is_trivial(self, atol: float = SUM_TOL) -> bool:
        """True when every row equals the first (zero-capacity channel)."""
        return bool(np.all(np.abs(self._w - self._w[0]) <= atol))


def validate_distribution(raw: Iterable[float]) -> Distribution:
    return Distribution(raw)


def validate_channel(raw: Sequence[Sequence[float]] | np.ndarray) -> Channel:
    return Channel(raw)
