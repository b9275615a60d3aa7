"""Sampled regret estimation and the empirical regret distribution."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .core import PointSet, Preference, regret_many

QUANTILE_LEVELS = (0.85, 0.90, 0.95, 1.0)
MAX_DEFAULT_SAMPLES = 10 ** 6


def default_sample_count(d: int) -> int:
    """20000 directions at d=3, scaled by 3 per extra dimension, capped at 1e6."""
    return int(min(MAX_DEFAULT_SAMPLES, round(20000 * 3.0 ** (d - 3))))


def sample_direction_array(d: int, count: int, seed=None) -> np.ndarray:
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    U = np.abs(rng.standard_normal((count, d)))
    norms = np.linalg.norm(U, axis=1)
    # An all-zero Gaussian row has probability zero; guard it anyway.
    bad = norms == 0
    U[bad] = 1.0
    norms[bad] = np.sqrt(d)
    return U / norms[:, None]


def sample_directions(d: int, count: int, seed=None) -> list[Preference]:
    """``count`` independent uniform unit directions in the positive orthant."""
    return [Preference(u, normalized=True) for u in sample_direction_array(d, count, seed)]


@dataclass
class RegretReport:
    max_regret: float
    witness: Preference
    sample_count: int
    quantiles: dict[float, float] = field(default_factory=dict)
    seed: int | None = None

    def as_dict(self) -> dict:
        return {
            "max_regret": self.max_regret,
            "witness": [float(x) for x in self.witness.direction],
            "sample_count": self.sample_count,
            "quantiles": {f"{q:g}": v for q, v in self.quantiles.items()},
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def csv_header(self) -> list[str]:
        return ["max_regret", "sample_count", "seed"] + [f"q{q:g}" for q in self.quantiles] + [
            f"w{j}" for j in range(self.witness.dims)]

    def csv_row(self) -> list[str]:
        vals = [repr(self.max_regret), str(self.sample_count), str(self.seed)]
        vals += [repr(v) for v in self.quantiles.values()]
        vals += [repr(float(x)) for x in self.witness.direction]
        return vals


def empirical_quantiles(values: np.ndarray, levels=QUANTILE_LEVELS) -> dict[float, float]:
    ordered = np.sort(values)
    # inverted-CDF quantiles are actual sample values; level 1.0 is the max
    return {float(q): float(np.quantile(ordered, q, method="inverted_cdf")) for q in levels}


def regret_samples(Q: PointSet, P: PointSet, k: int, count: int | None = None, seed=0):
    """Directions and their regret values, in sampling order."""
    count = default_sample_count(P.dims) if count is None else count
    U = sample_direction_array(P.dims, count, seed)
    return U, regret_many(U, Q, P, k)


def estimate_regret(Q: PointSet, P: PointSet, k: int, count: int | None = None,
                    seed=0) -> RegretReport:
    if Q.n and not Q.is_subset_of(P):
        raise ValueError("Q is not a subset of P")
    U, vals = regret_samples(Q, P, k, count, seed)
    i = int(np.argmax(vals))
    return RegretReport(
        max_regret=float(vals[i]),
        witness=Preference(U[i], normalized=True),
        sample_count=len(vals),
        quantiles=empirical_quantiles(vals),
        seed=seed if isinstance(seed, (int, np.integer)) else None,
    )


def regret_distribution(Q: PointSet, P: PointSet, k: int, count: int | None = None,
                        seed=0) -> np.ndarray:
    """Sorted regret values over sampled directions (for histograms)."""
    return np.sort(regret_samples(Q, P, k, count, seed)[1])
