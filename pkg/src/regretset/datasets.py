"""Synthetic generators (Sphere, AntiCor, SkyPoints) and CSV input/output."""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass

import numpy as np

from .core import PointSet

KINDS = ("sphere", "anticor", "skypoints", "csv")
SKYPOINTS_MAX_OFFSET = 0.02


class DatasetError(ValueError):
    pass


@dataclass
class DatasetSpec:
    kind: str
    d: int = 3
    n: int = 1000
    sigma: float | None = None
    seed: int = 0
    path: str | None = None
    cluster_size: int = 4
    label: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DatasetError(f"unknown dataset kind {self.kind!r}")
        if self.kind != "csv" and self.n < 1:
            raise DatasetError("n must be >= 1")
        if self.kind == "anticor":
            if self.sigma is None:
                self.sigma = 0.1
            if self.sigma <= 0:
                raise DatasetError("sigma must be > 0")
        if self.kind == "csv" and not self.path:
            raise DatasetError("csv datasets need a path")

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.kind == "csv":
            return os.path.basename(self.path)
        extra = f"-s{self.sigma:g}" if self.kind == "anticor" else ""
        return f"{self.kind}{extra}-d{self.d}-n{self.n}"

    def build(self) -> PointSet:
        if self.kind == "sphere":
            return gen_sphere(self.d, self.n, self.seed)
        if self.kind == "anticor":
            return gen_anticor(self.d, self.n, self.sigma, self.seed)
        if self.kind == "skypoints":
            return gen_skypoints(self.d, self.n, self.cluster_size, self.seed)
        return load_csv(self.path)


def _sphere_points(rng: np.random.Generator, d: int, n: int) -> np.ndarray:
    X = np.abs(rng.standard_normal((n, d)))
    return X / np.linalg.norm(X, axis=1)[:, None]


def gen_sphere(d: int, n: int, seed=0) -> PointSet:
    """n points uniform on the unit sphere within the positive orthant."""
    if d < 2:
        raise DatasetError("d must be >= 2")
    return PointSet(_sphere_points(np.random.default_rng(seed), d, n))


def gen_anticor(d: int, n: int, sigma: float = 0.1, seed=0, max_rejections=None) -> PointSet:
    """Anti-correlated points scattered around the plane sum(x) = 0.5 sqrt(d).

    A base point is uniform on the plane's intersection with the orthant
    (a Dirichlet(1,...,1) draw scaled to the simplex), then moved along the
    unit normal (1,...,1)/sqrt(d) by a N(0, sigma^2) amount; points that leave
    the orthant are rejected.
    """
    if sigma <= 0:
        raise DatasetError("sigma must be > 0")
    rng = np.random.default_rng(seed)
    limit = 1000 * n if max_rejections is None else max_rejections
    normal = np.full(d, 1.0 / math.sqrt(d))
    total = 0.5 * math.sqrt(d)
    kept: list[np.ndarray] = []
    have = rejected = 0
    while have < n:
        batch = max(64, 2 * (n - have))
        base = rng.dirichlet(np.ones(d), size=batch) * total
        t = rng.normal(0.0, sigma, size=batch)
        p = base + t[:, None] * normal
        ok = np.all(p >= 0, axis=1)
        rejected += int((~ok).sum())
        if rejected > limit:
            raise DatasetError(f"AntiCor acceptance rate too low (sigma={sigma}, d={d})")
        p = p[ok][: n - have]
        kept.append(p)
        have += p.shape[0]
    return PointSet(np.concatenate(kept))


def gen_skypoints(d: int, n: int, cluster_size: int = 4, seed=0) -> PointSet:
    """Sphere leaders, each followed by ``cluster_size`` points it dominates.

    ``n`` must be a multiple of ``cluster_size + 1``.  Leaders take ids
    ``0..L-1``; followers of leader ``i`` are built by subtracting offsets
    drawn from (0, 0.02] from every coordinate (clipped at 0).
    """
    if cluster_size < 0:
        raise DatasetError("cluster_size must be >= 0")
    if n % (cluster_size + 1):
        raise DatasetError(f"n={n} is not a multiple of cluster_size+1={cluster_size + 1}")
    leaders_n = n // (cluster_size + 1)
    rng = np.random.default_rng(seed)
    leaders = _sphere_points(rng, d, leaders_n)
    if cluster_size == 0:
        return PointSet(leaders)
    offsets = SKYPOINTS_MAX_OFFSET * (1.0 - rng.random((leaders_n, cluster_size, d)))
    followers = np.clip(leaders[:, None, :] - offsets, 0.0, None).reshape(-1, d)
    return PointSet(np.vstack([leaders, followers]))


def follower_leaders(n: int, cluster_size: int) -> np.ndarray:
    """Leader id of every point of a SkyPoints set (leaders map to themselves)."""
    leaders_n = n // (cluster_size + 1)
    return np.concatenate([np.arange(leaders_n), np.repeat(np.arange(leaders_n), cluster_size)])


def _parse_rows(lines, source: str):
    rows = [r for r in csv.reader(line for line in lines if not line.lstrip().startswith("#"))]
    rows = [r for r in rows if any(c.strip() for c in r)]
    if not rows:
        raise DatasetError(f"{source}: no header row")
    header = [h.strip() for h in rows[0]]
    body = rows[1:]
    return header, body


def load_csv(path, schema=None) -> PointSet:
    """Read a numeric CSV into a PointSet.

    Empty cells take the smallest present value of their column and negative
    values are replaced by their absolute value.  An ``id`` first column is
    used as point ids; otherwise ids are the 0-based data-row indices.
    ``schema`` optionally names the columns to keep.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DatasetError(f"{path}: {exc.strerror or exc}") from exc
    return parse_csv(text, schema, source=str(path))


def parse_csv(text: str, schema=None, source: str = "<csv>") -> PointSet:
    header, body = _parse_rows(io.StringIO(text), source)
    has_id = header[0].lower() == "id"
    cols = header[1:] if has_id else header
    if schema is not None:
        missing = [c for c in schema if c not in cols]
        if missing:
            raise DatasetError(f"{source}: columns {missing} not in header")
        keep = [cols.index(c) for c in schema]
    else:
        keep = list(range(len(cols)))
    off = 1 if has_id else 0
    n = len(body)
    values = np.full((n, len(keep)), np.nan)
    ids = np.arange(n, dtype=np.int64)
    for i, row in enumerate(body):
        line = i + 2
        if len(row) != len(header):
            raise DatasetError(f"{source}: row {line} has {len(row)} cells, expected {len(header)}")
        if has_id:
            try:
                ids[i] = int(row[0])
            except ValueError:
                raise DatasetError(f"{source}: row {line}, column 'id': bad id {row[0]!r}") from None
        for j, c in enumerate(keep):
            cell = row[c + off].strip()
            if not cell:
                continue
            try:
                v = float(cell)
            except ValueError:
                raise DatasetError(
                    f"{source}: row {line}, column {cols[c]!r}: cannot parse {cell!r}") from None
            if not math.isfinite(v):
                raise DatasetError(f"{source}: row {line}, column {cols[c]!r}: non-finite value")
            values[i, j] = abs(v)
    for j, c in enumerate(keep):
        present = ~np.isnan(values[:, j])
        if n and not present.any():
            raise DatasetError(f"{source}: column {cols[c]!r} has no values")
        values[~present, j] = values[present, j].min() if n else 0.0
    return PointSet(values.reshape(n, len(keep)), ids)


def format_csv(P: PointSet, seed=None, kind=None, names=None) -> str:
    """Serialise with an ``id`` column; floats use ``repr`` so they round-trip exactly."""
    buf = io.StringIO()
    tags = []
    if seed is not None:
        tags.append(f"seed={seed}")
    if kind is not None:
        tags.append(f"kind={kind}")
    if tags:
        buf.write("# " + " ".join(tags) + "\n")
    names = names or [f"x{j}" for j in range(P.dims)]
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id"] + list(names))
    for i, row in zip(P.ids, P.points):
        w.writerow([int(i)] + [repr(float(v)) for v in row])
    return buf.getvalue()


def save_csv(P: PointSet, path, seed=None, kind=None, names=None) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(format_csv(P, seed, kind, names))
    except OSError as exc:
        raise DatasetError(f"{path}: {exc.strerror or exc}") from exc
