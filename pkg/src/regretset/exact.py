"""Exact maximum regret for d = 2 and d = 3, and a nested-grid lower bound.

Both exact routines rely on the same fact: the planes through the origin
normal to ``p - q`` (all pairs of P) together with the coordinate planes cut
the orthant into cones inside which every ranking is fixed.  On such a cone
the regret is ``1 - <u, a> / <u, b>`` for two fixed points ``a``, ``b``, whose
maximum over the cone sits on one of its extreme rays.  So the maximum over
all preferences is the maximum over the extreme rays of the arrangement:
event angles in 2-D, pairwise plane intersections in 3-D.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .core import PointSet, Preference, regret_many

DEFAULT_MAX_N_3D = 40
_RAY_BUFFER = 1 << 16


def _check_inputs(Q: PointSet, P: PointSet, k: int, d: int | None = None):
    if P.n == 0:
        raise ValueError("empty point set")
    if d is not None and P.dims != d:
        raise ValueError(f"expected d={d}, got d={P.dims}")
    if Q.n and Q.dims != P.dims:
        raise ValueError("Q and P differ in dimension")
    if not 1 <= k <= P.n:
        raise ValueError(f"k={k} outside [1, {P.n}]")


def _best(U: np.ndarray, Q: PointSet, P: PointSet, k: int):
    vals = regret_many(U, Q, P, k)
    i = int(np.argmax(vals))
    return float(vals[i]), U[i]


def event_angles(P: PointSet) -> np.ndarray:
    """Sorted angles in [0, pi/2] at which two points of P swap order (plus the axes)."""
    X = P.points
    i, j = np.triu_indices(P.n, k=1)
    w = X[i] - X[j]
    cross = w[:, 0] * w[:, 1] < 0
    theta = np.arctan2(np.abs(w[cross, 0]), np.abs(w[cross, 1]))
    return np.unique(np.concatenate([[0.0, math.pi / 2], theta]))


def _angle_directions(theta: np.ndarray) -> np.ndarray:
    U = np.column_stack([np.cos(theta), np.sin(theta)])
    U[theta == 0.0] = (1.0, 0.0)
    U[theta == math.pi / 2] = (0.0, 1.0)
    return U


def exact_regret_2d(Q: PointSet, P: PointSet, k: int):
    """Maximum regret of Q over all planar preferences, with a witness direction.

    Evaluates every event angle and, as a guard against rounding near an
    event, the midpoint of every gap between consecutive events.
    """
    _check_inputs(Q, P, k, d=2)
    ev = event_angles(P)
    mids = 0.5 * (ev[:-1] + ev[1:])
    theta = np.empty(ev.size + mids.size)
    theta[0::2] = ev
    theta[1::2] = mids
    value, w = _best(_angle_directions(theta), Q, P, k)
    return value, Preference(w, normalized=True)


def _orthant_rays(normals: np.ndarray):
    """Yield unit rays in the closed orthant lying on two of the given planes."""
    m = normals.shape[0]
    buf: list[np.ndarray] = []
    size = 0
    for a in range(m - 1):
        v = np.cross(normals[a], normals[a + 1:])
        nv = np.linalg.norm(v, axis=1)
        scale = np.linalg.norm(normals[a]) * np.linalg.norm(normals[a + 1:], axis=1)
        ok = nv > 1e-12 * scale
        v = v[ok] / nv[ok, None]
        tol = 1e-12
        pos = np.all(v >= -tol, axis=1)
        neg = np.all(v <= tol, axis=1)
        v = np.concatenate([v[pos], -v[neg & ~pos]])
        if v.shape[0]:
            v = np.clip(v, 0.0, None)
            v /= np.linalg.norm(v, axis=1)[:, None]
            buf.append(v)
            size += v.shape[0]
        if size >= _RAY_BUFFER:
            yield np.concatenate(buf)
            buf, size = [], 0
    if buf:
        yield np.concatenate(buf)


def candidate_rays_3d(P: PointSet) -> np.ndarray:
    """All extreme-ray candidates of the 3-D arrangement, as unit vectors."""
    return np.concatenate(list(_orthant_rays(_normals_3d(P))))


def _normals_3d(P: PointSet) -> np.ndarray:
    X = P.points
    i, j = np.triu_indices(P.n, k=1)
    w = X[i] - X[j]
    w = w[np.any(w != 0, axis=1)]
    return np.vstack([w, np.eye(3)])


def exact_regret_3d(Q: PointSet, P: PointSet, k: int, max_n: int = DEFAULT_MAX_N_3D):
    """Maximum regret of Q over all preferences in R^3, with a witness direction.

    Cost grows like n^4; inputs larger than ``max_n`` are refused.
    """
    _check_inputs(Q, P, k, d=3)
    if P.n > max_n:
        raise ValueError(
            f"n={P.n} exceeds max_n={max_n} for exact 3-D regret; "
            "raise max_n or use grid_oracle instead")
    best, witness = -1.0, None
    for U in _orthant_rays(_normals_3d(P)):
        value, w = _best(U, Q, P, k)
        if value > best:
            best, witness = value, w
    return best, Preference(witness, normalized=True)


def exact_regret(Q: PointSet, P: PointSet, k: int, max_n: int = DEFAULT_MAX_N_3D):
    if P.dims == 2:
        return exact_regret_2d(Q, P, k)
    if P.dims == 3:
        return exact_regret_3d(Q, P, k, max_n=max_n)
    raise ValueError(f"exact regret is only available for d=2,3 (got d={P.dims})")


def _dyadic_level(resolution: int, count) -> int:
    level = 1
    while count(level) < resolution:
        level += 1
    return level


def grid_directions(d: int, resolution: int) -> np.ndarray:
    """Deterministic unit directions in the orthant, at least ``resolution`` of them.

    Grid sizes are powers of two per axis, so a higher resolution always
    produces a superset of the directions of a lower one.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if d < 2:
        raise ValueError("d must be >= 2")
    if d == 2:
        level = _dyadic_level(resolution, lambda L: 2 ** L + 1)
        theta = np.arange(2 ** level + 1) * (math.pi / 2 / 2 ** level)
        return _angle_directions(theta)
    if d == 3:
        level = _dyadic_level(resolution, lambda L: (2 ** L + 1) ** 2)
        t = np.arange(2 ** level + 1) * (math.pi / 2 / 2 ** level)
        t[-1] = math.pi / 2
        phi, theta = np.meshgrid(t, t, indexing="ij")
        phi, theta = phi.ravel(), theta.ravel()
        sp = np.sin(phi)
        U = np.column_stack([sp * np.cos(theta), sp * np.sin(theta), np.cos(phi)])
        return np.clip(U, 0.0, None)
    level = _dyadic_level(resolution, lambda L: math.comb(2 ** L + d - 1, d - 1))
    total = 2 ** level
    rows = []
    for bars in itertools.combinations(range(total + d - 1), d - 1):
        edges = (-1,) + bars + (total + d - 1,)
        rows.append([edges[i + 1] - edges[i] - 1 for i in range(d)])
    U = np.asarray(rows, dtype=np.float64)
    return U / np.linalg.norm(U, axis=1)[:, None]


def grid_oracle(Q: PointSet, P: PointSet, k: int, resolution: int):
    """Maximum regret over a deterministic direction grid: a lower bound on the truth."""
    _check_inputs(Q, P, k)
    U = grid_directions(P.dims, resolution)
    value, w = _best(U, Q, P, k)
    return value, Preference(w / np.linalg.norm(w), normalized=True)
