"""Checks of the 1 - 1/e bound on single channels and random ensembles."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import INV_E, THRESHOLD, Channel
from .errors import CapacityError
from .info import f_eval
from .solve import DEFAULT_MAX_ITER, DEFAULT_TOL, blahut_arimoto

ENSEMBLE_MAX_ITER = 10_000_000


@dataclass(frozen=True)
class BoundReport:
    capacity: float
    max_input_prob: float
    threshold: float = THRESHOLD
    margin: float = math.nan
    trivial: bool = False
    passed: bool = False
    iterations: int = 0
    error: str | None = None


@dataclass(frozen=True)
class EnsembleConfig:
    m: int
    n: int
    trials: int
    seed: int
    concentration: float = 1.0
    tol: float = DEFAULT_TOL
    max_iter: int = ENSEMBLE_MAX_ITER

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise ValueError("m and n must both be at least 2")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")
        if not self.concentration > 0:
            raise ValueError("concentration must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class EnsembleResult:
    config: EnsembleConfig
    reports: tuple[BoundReport, ...] = field(repr=False)
    min_margin: float
    max_max_input_prob: float
    failures: int
    solver_failures: int
    trivial: int


def verify_bound(
    ch: Channel, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> BoundReport:
    res = blahut_arimoto(ch, tol, max_iter)
    top = float(np.max(np.asarray(res.input)))
    margin = THRESHOLD - top
    trivial = res.capacity < tol
    return BoundReport(
        capacity=res.capacity,
        max_input_prob=top,
        margin=margin,
        trivial=trivial,
        passed=trivial or margin > 0,
        iterations=res.iterations,
    )


def sample_channel(rng: np.random.Generator, m: int, n: int, concentration: float) -> Channel:
    return Channel(rng.dirichlet(np.full(n, concentration), size=m))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Generator for one trial; depends only on ``(seed, trial)``."""
    return np.random.default_rng([trial, seed])


def run_trial(config: EnsembleConfig, trial: int) -> BoundReport:
    ch = sample_channel(trial_rng(config.seed, trial), config.m, config.n, config.concentration)
    try:
        return verify_bound(ch, config.tol, config.max_iter)
    except CapacityError as exc:
        return BoundReport(capacity=math.nan, max_input_prob=math.nan, error=exc.kind)


def ensemble_run(config: EnsembleConfig) -> EnsembleResult:
    reports = tuple(run_trial(config, t) for t in range(config.trials))
    solved = [r for r in reports if r.error is None]
    nontrivial = [r for r in solved if not r.trivial]
    return EnsembleResult(
        config=config,
        reports=reports,
        min_margin=min((r.margin for r in nontrivial), default=math.inf),
        max_max_input_prob=max((r.max_input_prob for r in nontrivial), default=0.0),
        failures=sum(1 for r in nontrivial if not r.margin > 0),
        solver_failures=len(reports) - len(solved),
        trivial=len(solved) - len(nontrivial),
    )


def f_surface(grid_k: int) -> np.ndarray:
    """``f(1/e; p1, p2)`` on the ``(grid_k + 1)^2`` grid over the unit square.

    Rows are ``(p1, p2, f)`` with ``p1`` varying slowest.
    """
    if grid_k < 1:
        raise ValueError("grid_k must be at least 1")
    ticks = np.linspace(0.0, 1.0, grid_k + 1)
    p1, p2 = np.meshgrid(ticks, ticks, indexing="ij")
    f = f_eval(INV_E, p1, p2)
    return np.column_stack([p1.ravel(), p2.ravel(), f.ravel()])
