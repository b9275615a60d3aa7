"""Greedy (sampled) baseline: repeatedly add the top point of the worst direction.

The max-regret direction is searched over a fixed random sample of
directions instead of solving linear programs, so results are labelled
"greedy (sampled)".
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import PointSet, regret_many, skyline
from .coreset import SelectionResult, top1_rows
from .evaluate import sample_direction_array
from .hitting_set import basis

LABEL = "greedy (sampled)"


@dataclass
class GreedyConfig:
    k: int = 1
    target_size: int | None = None
    target_epsilon: float | None = None
    direction_count: int = 20000
    seed: int = 0
    use_skyline: bool = True

    def __post_init__(self):
        if (self.target_size is None) == (self.target_epsilon is None):
            raise ValueError("set exactly one of target_size and target_epsilon")
        if self.target_size is not None and self.target_size < 1:
            raise ValueError("target_size must be >= 1")
        if self.target_epsilon is not None and not 0 <= self.target_epsilon < 1:
            raise ValueError("target_epsilon must lie in [0, 1)")
        if self.k < 1 or self.direction_count < 1:
            raise ValueError("k and direction_count must be >= 1")


def greedy_regret_set(P: PointSet, config: GreedyConfig, history: list | None = None) -> SelectionResult:
    """Start from the maximiser of the first coordinate, then keep adding the
    top point of the worst sampled direction.

    Stops at ``target_size`` points or once the sampled maximum regret is at
    most ``target_epsilon``.  The result is flagged uncertified when the
    epsilon target cannot be met (every candidate already chosen or no
    direction left to improve).  ``history`` receives the sampled maximum
    regret after every addition.
    """
    if P.n == 0:
        raise ValueError("empty point set")
    k = min(config.k, P.n)
    cand = skyline(P) if (config.use_skyline and k == 1) else P
    cand = cand.take(np.argsort(cand.ids, kind="stable"))
    U = sample_direction_array(P.dims, config.direction_count, config.seed)
    first = basis(cand).basis_ids[0]
    chosen = np.zeros(cand.n, dtype=bool)
    chosen[cand.positions([first])] = True
    vals = regret_many(U, cand.points[chosen], P, k)
    if history is not None:
        history.append(float(vals.max()))

    def done(v):
        if config.target_size is not None:
            return chosen.sum() >= config.target_size or v.max() == 0
        return v.max() <= config.target_epsilon

    while not done(vals):
        i = int(np.argmax(vals))
        row = int(top1_rows(U[i:i + 1], cand)[0])
        if chosen[row]:
            break  # the worst direction's top point is already in: no progress possible
        chosen[row] = True
        vals = regret_many(U, cand.points[chosen], P, k)
        if history is not None:
            history.append(float(vals.max()))
    est = float(vals.max())
    ok = est <= config.target_epsilon if config.target_epsilon is not None else True
    return SelectionResult(P.subset(cand.ids[chosen]), certified=ok, regret_estimate=est,
                           rounds=int(chosen.sum()), epsilon=config.target_epsilon)
