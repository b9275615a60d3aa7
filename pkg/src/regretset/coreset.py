"""Directional width, epsilon-kernel certificates and the staged randomized regret set (RRS)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PointSet, as_direction, regret_many, scores
from .evaluate import default_sample_count, sample_direction_array

# Batches double after a round that adds nothing, up to this many directions.
MAX_STAGE_BATCH = 1 << 16


@dataclass
class SelectionResult:
    """A chosen subset together with how it was obtained.

    ``certified`` is False when the algorithm stopped on a budget before its
    own stopping test was met.
    """

    subset: PointSet
    certified: bool = True
    regret_estimate: float | None = None
    rounds: int = 0
    epsilon: float | None = None

    @property
    def ids(self) -> np.ndarray:
        return self.subset.ids

    def __len__(self) -> int:
        return self.subset.n


def directional_width(u, P: PointSet) -> float:
    """max_p <u,p> - min_p <u,p>."""
    if P.n == 0:
        raise ValueError("empty point set")
    s = scores(as_direction(u)[None, :], P.points)[0]
    return float(s.max() - s.min())


def _widths(U: np.ndarray, X: np.ndarray) -> np.ndarray:
    s = scores(U, X)
    return s.max(axis=1) - s.min(axis=1)


def is_eps_kernel(Q: PointSet, P: PointSet, epsilon: float, directions) -> bool:
    """Whether width(u,Q) >= (1-eps) width(u,P) for every supplied direction.

    Only a sampled certificate: directions that are not supplied are not checked.
    Directions may be arbitrary vectors of R^d, not just preferences.
    """
    U = np.atleast_2d(np.array([as_direction(u) for u in directions], dtype=np.float64))
    if Q.n == 0:
        return bool(np.all((1 - epsilon) * _widths(U, P.points) <= 0))
    return bool(np.all(_widths(U, Q.points) >= (1 - epsilon) * _widths(U, P.points)))


@dataclass
class RRSConfig:
    epsilon: float
    k: int = 1
    batch_size: int | None = None
    eval_count: int | None = None
    max_rounds: int = 64
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.batch_size is not None and self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")

    def resolved_batch_size(self, d: int) -> int:
        if self.batch_size is not None:
            return self.batch_size
        return math.ceil(1.0 / self.epsilon ** ((d - 1) / 2))

    def resolved_eval_count(self, d: int) -> int:
        return default_sample_count(d) if self.eval_count is None else self.eval_count


def top1_rows(U: np.ndarray, P: PointSet) -> np.ndarray:
    """Row index of the best point of P for each direction (ties: lowest id)."""
    s = scores(U, P.points)
    best = s.max(axis=1, keepdims=True)
    # among maximal scores pick the lowest id
    masked = np.where(s == best, P.ids[None, :], np.iinfo(np.int64).max)
    return P.positions(masked.min(axis=1))


def rrs(P: PointSet, config: RRSConfig, history: list | None = None) -> SelectionResult:
    """Grow Q from fresh random directions in rounds until the sampled regret is <= eps.

    Each round draws ``batch_size`` directions, and for every direction whose
    regret against the current Q exceeds eps, adds that direction's top point.
    A round that adds nothing doubles the batch for the next one.
    The stopping test uses one fixed evaluation sample across rounds, so the
    estimate never increases.  ``history`` (if given) receives the
    (|Q|, estimate) pair of every round.
    """
    if P.n == 0:
        raise ValueError("empty point set")
    k = min(config.k, P.n)
    eps = config.epsilon
    rng = np.random.default_rng(config.seed)
    d = P.dims
    batch = config.resolved_batch_size(d)
    eval_U = sample_direction_array(d, config.resolved_eval_count(d), rng)
    chosen = np.zeros(P.n, dtype=bool)
    estimate = 1.0
    rounds = 0
    for rounds in range(1, config.max_rounds + 1):
        U = sample_direction_array(d, batch, rng)
        Q = P.take(np.flatnonzero(chosen))
        bad = regret_many(U, Q, P, k) > eps
        if np.any(bad):
            chosen[top1_rows(U[bad], P)] = True
        else:
            batch = min(2 * batch, max(batch, MAX_STAGE_BATCH))
        Q = P.take(np.flatnonzero(chosen))
        estimate = float(regret_many(eval_U, Q, P, k).max())
        if history is not None:
            history.append((Q.n, estimate))
        if estimate <= eps:
            break
    return SelectionResult(P.take(np.flatnonzero(chosen)), certified=estimate <= eps,
                           regret_estimate=estimate, rounds=rounds, epsilon=eps)
