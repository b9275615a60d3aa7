"""Point sets, preferences and the scoring / ranking / skyline primitives.

Scores are accumulated coordinate by coordinate in a fixed order rather than
through a BLAS matrix product, so the score of a direction is bit-identical no
matter how many other directions are evaluated alongside it.  Every regret
value in the package goes through :func:`regret_many`.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

# Upper bound on (directions x points) entries materialised per chunk.
_CHUNK_ENTRIES = 1 << 21


class PointSet:
    """An immutable set of ``n`` points in the non-negative orthant of R^d.

    ``ids`` are stable integer identifiers; subsets keep the ids of their
    parent so that ``Q ⊆ P`` can be checked by id.
    """

    __slots__ = ("_points", "_ids", "_pos")

    def __init__(self, points, ids=None):
        pts = np.array(points, dtype=np.float64, copy=True)
        if pts.ndim == 1 and pts.size == 0:
            pts = pts.reshape(0, 0)
        if pts.ndim != 2:
            raise ValueError("points must be a 2-D array of shape (n, d)")
        if pts.shape[0] and pts.shape[1] == 0:
            raise ValueError("points must have at least one coordinate")
        if not np.all(np.isfinite(pts)):
            raise ValueError("coordinates must be finite")
        if np.any(pts < 0):
            raise ValueError("coordinates must be non-negative")
        if ids is None:
            idx = np.arange(pts.shape[0], dtype=np.int64)
        else:
            idx = np.array(ids, dtype=np.int64, copy=True).reshape(-1)
            if idx.shape[0] != pts.shape[0]:
                raise ValueError("ids and points differ in length")
            if np.unique(idx).shape[0] != idx.shape[0]:
                raise ValueError("ids must be unique")
        pts.setflags(write=False)
        idx.setflags(write=False)
        self._points = pts
        self._ids = idx
        self._pos = None

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def ids(self) -> np.ndarray:
        return self._ids

    @property
    def n(self) -> int:
        return self._points.shape[0]

    @property
    def dims(self) -> int:
        return self._points.shape[1]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"PointSet(n={self.n}, dims={self.dims})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return (
            self._points.shape == other._points.shape
            and np.array_equal(self._ids, other._ids)
            and np.array_equal(self._points, other._points)
        )

    __hash__ = None

    def positions(self, ids) -> np.ndarray:
        """Row positions of the given ids; raises KeyError for unknown ids."""
        if self._pos is None:
            self._pos = {int(i): r for r, i in enumerate(self._ids)}
        try:
            return np.array([self._pos[int(i)] for i in np.asarray(ids).reshape(-1)],
                            dtype=np.int64)
        except KeyError as exc:
            raise KeyError(f"id {exc.args[0]} not in point set") from None

    def subset(self, ids) -> "PointSet":
        """The sub-point-set with the given ids, ordered by ascending id."""
        ids = np.unique(np.asarray(list(ids) if not isinstance(ids, np.ndarray) else ids,
                                   dtype=np.int64))
        rows = self.positions(ids)
        return PointSet(self._points[rows].reshape(len(rows), self.dims), ids)

    def take(self, rows) -> "PointSet":
        rows = np.asarray(rows, dtype=np.int64)
        return PointSet(self._points[rows].reshape(len(rows), self.dims), self._ids[rows])

    def is_subset_of(self, other: "PointSet") -> bool:
        if self.n and self.dims != other.dims:
            return False
        if not np.all(np.isin(self._ids, other._ids)):
            return False
        return bool(np.array_equal(self._points, other._points[other.positions(self._ids)]))


@dataclass(frozen=True, eq=False)
class Preference:
    """A preference direction in the closed positive orthant."""

    direction: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        u = np.array(self.direction, dtype=np.float64, copy=True).reshape(-1)
        if u.size == 0 or np.any(u < 0) or not np.any(u > 0) or not np.all(np.isfinite(u)):
            raise ValueError("a preference needs non-negative, not-all-zero components")
        if self.normalized and abs(np.linalg.norm(u) - 1.0) > 1e-12:
            raise ValueError("normalized preference must have unit norm")
        u.setflags(write=False)
        object.__setattr__(self, "direction", u)

    @classmethod
    def unit(cls, direction) -> "Preference":
        u = np.asarray(direction, dtype=np.float64)
        return cls(u / np.linalg.norm(u), normalized=True)

    @property
    def dims(self) -> int:
        return self.direction.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.direction if dtype is None else self.direction.astype(dtype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Preference):
            return NotImplemented
        return self.normalized == other.normalized and np.array_equal(self.direction, other.direction)

    def __hash__(self) -> int:
        return hash((self.direction.tobytes(), self.normalized))


class Ranked(NamedTuple):
    id: int
    score: float


def as_direction(u) -> np.ndarray:
    if isinstance(u, Preference):
        return u.direction
    return np.asarray(u, dtype=np.float64).reshape(-1)


def _as_points(P) -> np.ndarray:
    if isinstance(P, PointSet):
        return P.points
    return np.asarray(P, dtype=np.float64)


def scores(U, X) -> np.ndarray:
    """Score matrix ``S[i, j] = <U[i], X[j]>`` with a fixed summation order."""
    U = np.atleast_2d(np.asarray(U, dtype=np.float64))
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if X.shape[0] == 0:
        return np.zeros((U.shape[0], 0))
    if U.shape[1] != X.shape[1]:
        raise ValueError(f"dimension mismatch: {U.shape[1]} vs {X.shape[1]}")
    out = U[:, 0:1] * X[:, 0]
    for j in range(1, U.shape[1]):
        out += U[:, j:j + 1] * X[:, j]
    return out


def score(u, p) -> float:
    """Score of point ``p`` under preference ``u`` (their inner product)."""
    u = as_direction(u)
    p = np.asarray(p, dtype=np.float64).reshape(-1)
    if u.shape != p.shape:
        raise ValueError(f"dimension mismatch: {u.shape[0]} vs {p.shape[0]}")
    return float(scores(u[None, :], p[None, :])[0, 0])


def top_k(u, P: PointSet, k: int) -> list[Ranked]:
    """The k best points of P along u: descending score, ties by ascending id."""
    if P.n == 0:
        raise ValueError("empty point set")
    if not 1 <= k <= P.n:
        raise ValueError(f"k={k} outside [1, {P.n}]")
    s = scores(as_direction(u)[None, :], P.points)[0]
    order = np.lexsort((P.ids, -s))[:k]
    return [Ranked(int(P.ids[i]), float(s[i])) for i in order]


def kth_score(S: np.ndarray, k: int) -> np.ndarray:
    """Row-wise k-th largest entry of a score matrix."""
    n = S.shape[1]
    if k == 1:
        return S.max(axis=1)
    return np.partition(S, n - k, axis=1)[:, n - k]


def thread_count() -> int:
    raw = os.environ.get("REGRETSET_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"REGRETSET_THREADS must be an integer, got {raw!r}") from None


def _regret_block(U, Qx, Px, k):
    wk = kth_score(scores(U, Px), k)
    if Qx.shape[0]:
        wq = scores(U, Qx).max(axis=1)
    else:
        wq = np.zeros(U.shape[0])
    out = np.zeros(U.shape[0])
    pos = wk > 0
    out[pos] = np.maximum(0.0, wk[pos] - wq[pos]) / wk[pos]
    return out


def regret_many(U, Q, P, k: int, threads: int | None = None) -> np.ndarray:
    """Regret ratio of Q w.r.t. P at every row of ``U``.

    Rows are processed in fixed-size chunks; the optional thread pool only
    changes which worker computes a chunk, never the arithmetic.
    """
    U = np.atleast_2d(np.asarray(U, dtype=np.float64))
    Px = _as_points(P)
    Qx = _as_points(Q)
    if Qx.size == 0:
        Qx = np.zeros((0, Px.shape[1]))
    n = Px.shape[0]
    if n == 0:
        raise ValueError("empty point set")
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside [1, {n}]")
    if U.shape[1] != Px.shape[1]:
        raise ValueError(f"dimension mismatch: {U.shape[1]} vs {Px.shape[1]}")
    step = max(1, _CHUNK_ENTRIES // max(n, 1))
    if U.shape[0] <= step:
        return _regret_block(U, Qx, Px, k)
    blocks = [U[i:i + step] for i in range(0, U.shape[0], step)]
    threads = thread_count() if threads is None else threads
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _regret_block(b, Qx, Px, k), blocks))
    else:
        parts = [_regret_block(b, Qx, Px, k) for b in blocks]
    return np.concatenate(parts)


def regret_at(u, Q, P, k: int) -> float:
    """Relative loss of the best point of Q against the k-th best of P along u.

    Defined as 0 when the k-th best score of P is 0, and 1 for an empty Q.
    """
    return float(regret_many(as_direction(u)[None, :], Q, P, k)[0])


def dominance_rank(P: PointSet) -> np.ndarray:
    """Rank of every row when sorted by (-sum, -x_1, ..., -x_d, id).

    A point always ranks before any point it dominates, so breaking ties by
    this rank never prefers a dominated point.
    """
    X = P.points
    keys = [P.ids] + [-X[:, j] for j in range(P.dims - 1, -1, -1)] + [-X.sum(axis=1)]
    rank = np.empty(P.n, dtype=np.int64)
    rank[np.lexsort(keys)] = np.arange(P.n)
    return rank


def skyline(P: PointSet) -> PointSet:
    """Points of P not dominated by any other point (duplicates kept)."""
    if P.n <= 1:
        return P
    X = P.points
    order = np.argsort(dominance_rank(P))
    sky_rows: list[int] = []
    sky = np.zeros((0, P.dims))
    step = max(1, _CHUNK_ENTRIES // max(P.n, 1) // P.dims)
    for start in range(0, P.n, step):
        rows = order[start:start + step]
        cand = np.vstack([sky, X[rows]])
        block = X[rows]
        ge = np.all(cand[None, :, :] >= block[:, None, :], axis=2)
        gt = np.any(cand[None, :, :] > block[:, None, :], axis=2)
        keep = ~np.any(ge & gt, axis=1)
        sky_rows.extend(rows[keep].tolist())
        sky = np.vstack([sky, block[keep]])
    return P.take(np.sort(np.asarray(sky_rows, dtype=np.int64)))
