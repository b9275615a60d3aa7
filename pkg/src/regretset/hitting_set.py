"""Regret sets as hitting sets of near-top-k ranges over a direction net (RMS_HS).

Pipeline: scale every coordinate by its maximum, cover the unit preference
sphere with a net of angular radius eps/(2d), build for every net direction
the range of points scoring at least (1-eps) times the k-th best score, hit
all ranges greedily and add the per-coordinate maximisers.  The result has
regret at most 2*eps in every direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PointSet, Preference, dominance_rank, kth_score, regret_many, scores, skyline
from .coreset import SelectionResult
from .evaluate import default_sample_count, sample_direction_array

NET_MODES = ("grid", "random", "staged", "auto")
MAX_NET_SIZE = 2_000_000
RANDOM_NET_CONSTANT = 4
MIN_ERROR_C = 2
MIN_ERROR_FLOOR = 2.0 ** -20


@dataclass(frozen=True)
class ScaleTransform:
    maxima: np.ndarray
    basis_ids: tuple[int, ...]

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(1.0 / self.maxima)


@dataclass
class RangeSystem:
    """Ground ids plus one boolean membership row per net direction."""

    ground: np.ndarray
    membership: np.ndarray
    net: np.ndarray

    @property
    def ranges(self) -> list[np.ndarray]:
        return [self.ground[row] for row in self.membership]

    @property
    def preferences(self) -> list[Preference]:
        return [Preference(u, normalized=True) for u in self.net]

    @classmethod
    def from_sets(cls, sets) -> "RangeSystem":
        sets = [set(int(x) for x in s) for s in sets]
        ground = np.array(sorted(set().union(*sets)), dtype=np.int64)
        col = {g: j for j, g in enumerate(ground)}
        M = np.zeros((len(sets), len(ground)), dtype=bool)
        for i, s in enumerate(sets):
            M[i, [col[x] for x in s]] = True
        return cls(ground, M, np.zeros((len(sets), 0)))


@dataclass
class HSConfig:
    epsilon: float
    k: int = 1
    use_skyline: bool = True
    net_mode: str = "grid"
    seed: int = 0
    max_net_size: int = MAX_NET_SIZE
    # staged mode only
    batch_size: int | None = None
    eval_count: int | None = None
    max_rounds: int = 64

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.net_mode not in NET_MODES:
            raise ValueError(f"net_mode must be one of {NET_MODES}")


def basis(P: PointSet) -> ScaleTransform:
    """Per-coordinate maxima and, for each coordinate, a point attaining it.

    Among several maximisers the one ranked first by :func:`dominance_rank`
    is used, so basis points are never dominated.
    """
    if P.n == 0:
        raise ValueError("empty point set")
    m = P.points.max(axis=0)
    if np.any(m <= 0):
        bad = [int(j) for j in np.flatnonzero(m <= 0)]
        raise ValueError(f"coordinate(s) {bad} are identically zero; scaling is undefined")
    rank = dominance_rank(P)
    ids = []
    for j in range(P.dims):
        hit = np.flatnonzero(P.points[:, j] == m[j])
        ids.append(int(P.ids[hit[np.argmin(rank[hit])]]))
    m.setflags(write=False)
    return ScaleTransform(m, tuple(ids))


def apply_scale(P: PointSet, T: ScaleTransform) -> PointSet:
    return PointSet(P.points / T.maxima, P.ids)


def net_size(d: int, delta: float, mode: str = "grid") -> int:
    if mode == "grid":
        return _grid_cells(d, delta) ** (d - 1)
    return _random_net_count(d, delta)


def _grid_cells(d: int, delta: float) -> int:
    # Cell-centred angles within s/2 of any u per coordinate give a geodesic
    # distance <= sqrt(d-1)*s/2, hence the spacing below.
    spacing = min(delta, 2 * delta / math.sqrt(d - 1))
    return math.ceil((math.pi / 2) / spacing - 1e-12)


def _random_net_count(d: int, delta: float) -> int:
    return math.ceil(RANDOM_NET_CONSTANT * (1 / delta) ** (d - 1) * max(1.0, math.log(1 / delta)))


def _hyperspherical(angles: np.ndarray) -> np.ndarray:
    """Map (m, d-1) angles in [0, pi/2] to unit vectors in the orthant."""
    m, a = angles.shape
    U = np.ones((m, a + 1))
    for j in range(a):
        U[:, j] *= np.cos(angles[:, j])
        U[:, j + 1:] *= np.sin(angles[:, j])[:, None]
    return np.clip(U, 0.0, None)


def build_net(d: int, delta: float, mode: str = "grid", seed=0,
              max_size: int = MAX_NET_SIZE) -> np.ndarray:
    """Unit directions covering the orthant sphere within angle ``delta``.

    ``grid`` is a certified cell-centred angular grid; ``random`` draws
    ``ceil(4 (1/delta)^(d-1) log(1/delta))`` uniform directions, which covers
    with good probability but not with certainty.
    """
    if not 0 < delta < math.pi / 2 + 1e-12:
        raise ValueError("delta must lie in (0, pi/2]")
    if d < 2:
        raise ValueError("d must be >= 2")
    size = net_size(d, delta, mode)
    if size > max_size:
        raise ValueError(f"{mode} net would need {size} directions (> {max_size}); "
                         "use net_mode='staged' or a larger epsilon")
    if mode == "random":
        return sample_direction_array(d, size, seed)
    if mode != "grid":
        raise ValueError(f"unknown net mode {mode!r}")
    m = _grid_cells(d, delta)
    t = (np.arange(m) + 0.5) * (math.pi / 2 / m)
    grids = np.meshgrid(*([t] * (d - 1)), indexing="ij")
    return _hyperspherical(np.column_stack([g.ravel() for g in grids]))


def range_membership(U: np.ndarray, X: np.ndarray, k: int, epsilon: float) -> np.ndarray:
    """Boolean (len(U), n) matrix of ``<u,p> >= (1-eps) * (k-th best score along u)``."""
    n = X.shape[0]
    step = max(1, (1 << 21) // max(n, 1))
    out = np.empty((U.shape[0], n), dtype=bool)
    for i in range(0, U.shape[0], step):
        S = scores(U[i:i + step], X)
        out[i:i + step] = S >= ((1 - epsilon) * kth_score(S, k))[:, None]
    return out


def build_ranges(P: PointSet, net, k: int, epsilon: float) -> RangeSystem:
    """One range per net direction: the points within factor (1-eps) of the k-th best score."""
    U = np.atleast_2d(np.array([np.asarray(u, dtype=np.float64) for u in net]))
    order = np.argsort(P.ids, kind="stable")
    Ps = P.take(order)
    return RangeSystem(Ps.ids, range_membership(U, Ps.points, min(k, P.n), epsilon), U)


def _greedy_cover(M: np.ndarray, rank: np.ndarray | None = None) -> list[int]:
    """Greedy hitting set on a membership matrix; returns column indices.

    Ranges are counted with multiplicity.  Ties go to the lowest ``rank``
    (column order when not given).
    """
    if M.shape[0] == 0:
        return []
    if not np.all(M.any(axis=1)):
        raise ValueError("range system contains an empty range")
    M, weight = np.unique(M, axis=0, return_counts=True)
    rank = np.arange(M.shape[1]) if rank is None else np.asarray(rank)
    by_rank = np.argsort(rank, kind="stable")
    Mr = M[:, by_rank]
    alive = np.ones(M.shape[0], dtype=bool)
    picked: list[int] = []
    while alive.any():
        counts = weight[alive] @ Mr[alive]
        j = int(by_rank[int(np.argmax(counts))])  # first maximum in rank order
        picked.append(j)
        alive &= ~M[:, j]
    return picked


def greedy_hitting_set(R) -> set[int]:
    """Repeatedly take the element lying in the most ranges not yet hit.

    Accepts a :class:`RangeSystem` or any iterable of id collections.  Ties go
    to the smallest id.  Size is within a factor 1 + ln(m) of optimal.
    """
    if not isinstance(R, RangeSystem):
        sets = [list(s) for s in R]
        if any(len(s) == 0 for s in sets):
            raise ValueError("range system contains an empty range")
        R = RangeSystem.from_sets(sets)
    return {int(R.ground[j]) for j in _greedy_cover(R.membership)}


def _prepare(P: PointSet, config: HSConfig):
    if P.n == 0:
        raise ValueError("empty point set")
    work = skyline(P) if (config.use_skyline and config.k == 1) else P
    work = work.take(np.argsort(work.ids, kind="stable"))
    T = basis(work)
    return work, T, apply_scale(work, T)


def rms_hs(P: PointSet, config: HSConfig) -> SelectionResult:
    """A (k, 2 eps)-regret set of P built from a hitting set of net ranges plus the basis."""
    work, T, scaled = _prepare(P, config)
    d = P.dims
    k = min(config.k, work.n)
    delta = config.epsilon / (2 * d)
    mode = config.net_mode
    if mode == "auto":
        mode = "grid" if net_size(d, delta, "grid") <= config.max_net_size else "staged"
    if mode == "staged":
        return _rms_hs_staged(P, work, T, scaled, config, k)
    net = build_net(d, delta, mode, config.seed, config.max_net_size)
    M = range_membership(net, scaled.points, k, config.epsilon)
    hit = work.ids[_greedy_cover(M, dominance_rank(work))]
    ids = np.union1d(hit, np.asarray(T.basis_ids, dtype=np.int64))
    return SelectionResult(P.subset(ids), certified=True, epsilon=config.epsilon, rounds=1)


def _rms_hs_staged(P, work, T, scaled, config: HSConfig, k: int) -> SelectionResult:
    """Grow the hitting set on batches of random directions until the sampled regret is <= eps.

    Each stage hits the ranges of a fresh batch plus those of the evaluation
    directions that were still violated after the previous stage.  Sampling
    and the stopping test both happen in scaled coordinates, where the ranges
    live; regret sets are unchanged by the scaling.
    """
    d = P.dims
    eps = config.epsilon
    rng = np.random.default_rng(config.seed)
    batch = config.batch_size or min(1 << 14, max(64, math.ceil(eps ** (-(d - 1) / 2))))
    eval_count = default_sample_count(d) if config.eval_count is None else config.eval_count
    eval_U = sample_direction_array(d, eval_count, rng)
    chosen = np.isin(work.ids, np.asarray(T.basis_ids))
    rank = dominance_rank(work)
    estimate, rounds = 1.0, 0
    violated = np.zeros((0, d))
    for rounds in range(1, config.max_rounds + 1):
        U = np.vstack([sample_direction_array(d, batch, rng), violated])
        M = range_membership(U, scaled.points, k, eps)
        M = M[~np.any(M[:, chosen], axis=1)]
        chosen[_greedy_cover(M, rank)] = True
        vals = regret_many(eval_U, scaled.points[chosen], scaled, k)
        estimate = float(vals.max())
        if estimate <= eps:
            break
        # directions still violated join the next stage's sample
        violated = eval_U[vals > eps]
    return SelectionResult(P.subset(work.ids[chosen]), certified=estimate <= eps,
                           regret_estimate=estimate, rounds=rounds, epsilon=eps)


def min_error_threshold(r: int, c: int = MIN_ERROR_C) -> int:
    return c * r * max(1, math.ceil(math.log2(r))) if r > 1 else c


def min_error(P: PointSet, r: int, k: int = 1, seed: int = 0, net_mode: str = "auto",
              use_skyline: bool = True, **hs_kwargs):
    """Bicriteria min-error search: the smallest dyadic eps whose RMS_HS output fits.

    Returns ``(result, eps_hat)``.  The output has at most ``c r log r`` points
    (c=2, log base 2) and regret at most ``2 eps_hat``.  When that budget
    already holds every candidate point, the candidates are returned with
    ``eps_hat = 0``.
    """
    if r < P.dims:
        raise ValueError(f"r={r} must be at least d={P.dims}")
    budget = min_error_threshold(r)
    candidates = skyline(P) if (use_skyline and k == 1) else P
    if budget >= candidates.n:
        return SelectionResult(candidates, certified=True, regret_estimate=0.0, epsilon=0.0), 0.0

    cache: dict[float, SelectionResult] = {}

    def probe(eps):
        if eps not in cache:
            cfg = HSConfig(eps, k=k, use_skyline=use_skyline, net_mode=net_mode, seed=seed,
                           **hs_kwargs)
            cache[eps] = rms_hs(P, cfg)
        return cache[eps]

    def fits(eps):
        return len(probe(eps)) <= budget

    eps = 0.5
    if not fits(eps):
        # doubling would leave (0, 1): close the gap to 1 instead
        while not fits(eps):
            if eps >= 1 - 2 ** -10:
                res = probe(eps)
                res.certified = False
                return res, eps
            eps = 1 - (1 - eps) / 2
        return probe(eps), eps
    while eps / 2 >= MIN_ERROR_FLOOR and fits(eps / 2):
        eps /= 2
    res = probe(eps)
    if eps / 2 < MIN_ERROR_FLOOR:
        res.certified = False
    return res, eps
