"""Benchmark grid runner producing plot-ready CSV records."""

from __future__ import annotations

import csv
import io
import json
import multiprocessing as mp
import time
from dataclasses import asdict, dataclass, fields

import numpy as np

from .core import PointSet
from .coreset import RRSConfig, rrs
from .datasets import DatasetSpec
from .evaluate import default_sample_count, estimate_regret
from .exact import DEFAULT_MAX_N_3D, exact_regret
from .greedy import GreedyConfig, greedy_regret_set
from .hitting_set import HSConfig, min_error, rms_hs

ALGORITHMS = ("hs", "rrs", "greedy")
LABELS = {"hs": "HS", "rrs": "RRS", "greedy": "greedy (sampled)"}
DEFAULT_TIMEOUT = 300.0


@dataclass
class BenchRecord:
    algorithm: str
    label: str
    dataset: str
    d: int
    n: int
    k: int
    param: str
    value: float
    rep: int | str
    seed: int | str
    result_size: float | None = None
    max_regret: float | None = None
    regret_source: str = ""
    quantile_90: float | None = None
    quantile_95: float | None = None
    wall_time_ms: float | None = None
    certified: bool | str = ""
    status: str = "ok"
    agg: str = "run"


FIELDS = [f.name for f in fields(BenchRecord)]


@dataclass
class GridSpec:
    datasets: list
    algorithms: list
    k: list
    eps: list
    r: list
    reps: int = 5
    samples: int | None = None
    seed: int = 0
    timeout: float | None = DEFAULT_TIMEOUT
    net: str = "auto"
    skyline: bool = True
    exact: bool = True
    exact_max_n: int = DEFAULT_MAX_N_3D

    @classmethod
    def from_dict(cls, raw: dict) -> "GridSpec":
        raw = dict(raw)
        datasets = [DatasetSpec(**ds) for ds in raw.pop("datasets")]
        algos = raw.pop("algorithms", list(ALGORITHMS))
        bad = [a for a in algos if a not in ALGORITHMS]
        if bad:
            raise ValueError(f"unknown algorithms {bad}")
        ks = raw.pop("k", [1])
        eps = raw.pop("eps", [])
        rs = raw.pop("r", [])
        if not eps and not rs:
            raise ValueError("grid spec needs 'eps' and/or 'r' values")
        spec = cls(datasets, algos, list(ks), list(eps), list(rs), **raw)
        if spec.reps < 1:
            raise ValueError("reps must be >= 1")
        return spec

    @classmethod
    def load(cls, path) -> "GridSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def derive_seed(base: int, *parts: int) -> int:
    """Deterministic per-run seed from the grid seed and cell coordinates."""
    return int(np.random.SeedSequence([base, *parts]).generate_state(1, dtype=np.uint32)[0])


def run_algorithm(algorithm: str, P: PointSet, k: int, param: str, value, seed: int, spec: GridSpec):
    if algorithm == "hs":
        if param == "eps":
            return rms_hs(P, HSConfig(value, k=k, use_skyline=spec.skyline, net_mode=spec.net,
                                      seed=seed, eval_count=spec.samples))
        res, _ = min_error(P, int(value), k=k, seed=seed, use_skyline=spec.skyline,
                           eval_count=spec.samples)
        return res
    if algorithm == "rrs":
        if param != "eps":
            raise ValueError("rrs takes an epsilon target, not a size")
        return rrs(P, RRSConfig(value, k=k, seed=seed, eval_count=spec.samples))
    if param == "eps":
        cfg = GreedyConfig(k=k, target_epsilon=value, seed=seed, use_skyline=spec.skyline,
                           direction_count=spec.samples or default_sample_count(P.dims))
    else:
        cfg = GreedyConfig(k=k, target_size=int(value), seed=seed, use_skyline=spec.skyline,
                           direction_count=spec.samples or default_sample_count(P.dims))
    return greedy_regret_set(P, cfg)


def _timed(algorithm, P, k, param, value, seed, spec):
    t0 = time.perf_counter()
    res = run_algorithm(algorithm, P, k, param, value, seed, spec)
    ms = (time.perf_counter() - t0) * 1000.0
    return res.subset.ids.tolist(), bool(res.certified), ms


def _child(conn, args):
    try:
        conn.send(("ok", _timed(*args)))
    except Exception as exc:  # reported back as a failed cell
        conn.send(("error", f"{type(exc).__name__}: {exc}"))
    finally:
        conn.close()


def run_cell(args, timeout: float | None):
    """Run one algorithm call, optionally in a forked child that is killed on timeout."""
    if not timeout:
        try:
            return "ok", _timed(*args)
        except Exception as exc:
            return "error", f"{type(exc).__name__}: {exc}"
    ctx = mp.get_context("fork")
    parent, child = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_child, args=(child, args))
    proc.start()
    child.close()
    if parent.poll(timeout):
        try:
            status, payload = parent.recv()
        except EOFError:
            status, payload = "error", "worker exited without a result"
        proc.join()
        return status, payload
    proc.kill()
    proc.join()
    return "timeout", None


def evaluate(Q: PointSet, P: PointSet, k: int, spec: GridSpec, seed: int):
    rep = estimate_regret(Q, P, k, spec.samples, seed)
    source, top = "sampled", rep.max_regret
    if spec.exact and (P.dims == 2 or (P.dims == 3 and P.n <= spec.exact_max_n)):
        top = exact_regret(Q, P, k, max_n=spec.exact_max_n)[0]
        source = "exact"
    return top, source, rep.quantiles[0.90], rep.quantiles[0.95]


def _mean_row(rows: list[BenchRecord]) -> BenchRecord:
    first = rows[0]
    ok = [r for r in rows if r.status == "ok"]
    out = BenchRecord(first.algorithm, first.label, first.dataset, first.d, first.n, first.k,
                      first.param, first.value, rep="", seed="", agg="mean",
                      regret_source=first.regret_source if ok else "")
    if not ok:
        out.status = "failed"
        return out
    for name in ("result_size", "max_regret", "quantile_90", "quantile_95", "wall_time_ms"):
        vals = [getattr(r, name) for r in ok]
        if all(v is not None for v in vals):
            setattr(out, name, float(np.mean(vals)))
    out.certified = all(r.certified is True for r in ok)
    out.status = "ok" if len(ok) == len(rows) else f"partial({len(ok)}/{len(rows)})"
    return out


def bench_grid(spec: GridSpec, timing: bool = True, progress=None) -> list[BenchRecord]:
    """Run every dataset x algorithm x k x parameter cell ``reps`` times plus a mean row."""
    records: list[BenchRecord] = []
    cell = 0
    for ds in spec.datasets:
        P = ds.build()
        params = [("eps", v) for v in spec.eps] + [("r", v) for v in spec.r]
        for algorithm in spec.algorithms:
            for k in spec.k:
                for param, value in params:
                    cell += 1
                    runs = []
                    for rep in range(spec.reps):
                        seed = derive_seed(spec.seed, cell, rep)
                        rec = BenchRecord(algorithm, LABELS[algorithm], ds.name, P.dims, P.n, k,
                                          param, float(value), rep, seed)
                        status, payload = run_cell((algorithm, P, k, param, value, seed, spec),
                                                   spec.timeout)
                        if status == "ok":
                            ids, certified, ms = payload
                            Q = P.subset(ids)
                            rec.result_size = Q.n
                            rec.certified = certified
                            rec.wall_time_ms = ms if timing else None
                            (rec.max_regret, rec.regret_source,
                             rec.quantile_90, rec.quantile_95) = evaluate(Q, P, k, spec, seed)
                        else:
                            rec.status = status if status == "timeout" else "error"
                            if payload and progress:
                                progress(f"cell {cell} rep {rep}: {payload}")
                        runs.append(rec)
                        if progress:
                            progress(f"{ds.name} {algorithm} k={k} {param}={value} rep={rep}: "
                                     f"{rec.status}")
                    records.extend(runs)
                    records.append(_mean_row(runs))
    return records


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def records_to_csv(records: list[BenchRecord], header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(FIELDS)
    for r in records:
        row = asdict(r)
        w.writerow([_fmt(row[f]) for f in FIELDS])
    return buf.getvalue()


def append_records(path, records: list[BenchRecord]) -> None:
    """Append rows to ``path``, writing the header only for a new or empty file."""
    try:
        with open(path, "a", newline="", encoding="utf-8") as fh:
            fh.write(records_to_csv(records, header=fh.tell() == 0))
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc


def read_records(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def spearman(x, y) -> float:
    """Rank correlation (average ranks for ties)."""
    from scipy.stats import spearmanr

    return float(spearmanr(x, y).statistic)
