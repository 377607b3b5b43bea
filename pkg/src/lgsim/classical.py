"""Macrorealist counter-model: a two-state Markov chain over the Q eigenstates.

Between consecutive measurement times the state flips with probability ``p``
(this ``p`` is the classical flip probability, unrelated to the spectral delay).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import LGResult, CorrelatorSet
from .errors import InvalidArgumentError


@dataclass(frozen=True)
class FlipModel:
    p: float

    def __post_init__(self):
        if not (0.0 <= self.p <= 1.0):
            raise InvalidArgumentError(f"flip probability must lie in [0, 1], got {self.p!r}")


def classical_correlators(model: FlipModel) -> CorrelatorSet:
    p = model.p
    k = 1 - 2 * p
    return CorrelatorSet(k12=k, k23=k, k13=4 * p * p - 4 * p + 1)


def classical_lg(model: FlipModel) -> LGResult:
    return LGResult.from_correlators(classical_correlators(model))


def monte_carlo_classical(model: FlipModel, n_trials: int, seed: int) -> CorrelatorSet:
    """Sample ``n_trials`` trajectories starting from Q(t1) = +1.

    Uses numpy's PCG64 generator seeded with ``seed``; identical arguments give
    bit-identical results.
    """
    if n_trials < 1:
        raise InvalidArgumentError(f"n_trials must be >= 1, got {n_trials}")
    rng = np.random.default_rng(seed)
    flips = rng.random((2, n_trials)) < model.p
    q1 = np.ones(n_trials, dtype=np.int64)
    q2 = np.where(flips[0], -q1, q1)
    q3 = np.where(flips[1], -q2, q2)
    return CorrelatorSet(
        k12=float(np.mean(q1 * q2)),
        k23=float(np.mean(q2 * q3)),
        k13=float(np.mean(q1 * q3)),
    )


def fit_flip_probability(k12_observed: float) -> FlipModel:
    """Macrorealist model reproducing an observed K12: ``p = (1 - K12) / 2``."""
    if not math.isfinite(k12_observed) or abs(k12_observed) > 1 + 1e-9:
        raise InvalidArgumentError(f"K12 must lie in [-1, 1], got {k12_observed!r}")
    return FlipModel(min(max((1 - k12_observed) / 2, 0.0), 1.0))
