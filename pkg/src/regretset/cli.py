"""Command-line entry point: ``regretset <subcommand> [flags]``.

Exit codes: 0 ok, 1 usage or bad input, 2 file errors, 3 result not certified.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import GridSpec, append_records, bench_grid, records_to_csv
from .core import PointSet, skyline
from .coreset import RRSConfig, rrs
from .datasets import DatasetError, DatasetSpec, format_csv, load_csv
from .evaluate import estimate_regret, regret_distribution
from .exact import exact_regret
from .greedy import GreedyConfig, greedy_regret_set
from .hitting_set import HSConfig, min_error, rms_hs

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_FLAGGED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _on_off(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value == "on"


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise DatasetError(f"{path}: {exc.strerror or exc}") from exc


def _load_pair(args) -> tuple[PointSet, PointSet]:
    P = load_csv(args.inp)
    Q = load_csv(args.subset)
    if Q.n and not Q.is_subset_of(P):
        raise UsageError(f"{args.subset} is not a subset (by id) of {args.inp}")
    return Q, P


def _emit_subset(res, P: PointSet, args, kind: str) -> int:
    _write(format_csv(res.subset, seed=getattr(args, "seed", None), kind=kind), args.out)
    info = {"size": res.subset.n, "n": P.n, "certified": bool(res.certified)}
    if res.regret_estimate is not None:
        info["regret_estimate"] = res.regret_estimate
    if res.epsilon is not None:
        info["epsilon"] = res.epsilon
    print(json.dumps(info, sort_keys=True), file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK if res.certified else EXIT_FLAGGED


def cmd_gen(args) -> int:
    spec = DatasetSpec(args.kind, d=args.d, n=args.n, sigma=args.sigma, seed=args.seed,
                       cluster_size=args.cluster)
    P = spec.build()
    _write(format_csv(P, seed=args.seed, kind=args.kind), args.out)
    return EXIT_OK


def cmd_skyline(args) -> int:
    P = load_csv(args.inp)
    S = skyline(P)
    if args.out:
        _write(format_csv(S, kind="skyline"), args.out)
    print(f"skyline: {S.n} of {P.n} points")
    return EXIT_OK


def cmd_rms_hs(args) -> int:
    P = load_csv(args.inp)
    cfg = HSConfig(args.eps, k=args.k, use_skyline=args.skyline, net_mode=args.net, seed=args.seed,
                   eval_count=args.samples)
    return _emit_subset(rms_hs(P, cfg), P, args, "rms-hs")


def cmd_rms_rrs(args) -> int:
    P = load_csv(args.inp)
    cfg = RRSConfig(args.eps, k=args.k, seed=args.seed, eval_count=args.samples,
                    batch_size=args.batch, max_rounds=args.max_rounds)
    return _emit_subset(rrs(P, cfg), P, args, "rms-rrs")


def cmd_rms_greedy(args) -> int:
    P = load_csv(args.inp)
    if (args.eps is None) == (args.r is None):
        raise UsageError("rms-greedy needs exactly one of --eps and --r")
    cfg = GreedyConfig(k=args.k, target_size=args.r, target_epsilon=args.eps, seed=args.seed,
                       direction_count=args.samples or 20000, use_skyline=args.skyline)
    return _emit_subset(greedy_regret_set(P, cfg), P, args, "rms-greedy")


def cmd_eval(args) -> int:
    Q, P = _load_pair(args)
    rep = estimate_regret(Q, P, args.k, args.samples, args.seed)
    if args.out:
        _write(",".join(rep.csv_header()) + "\n" + ",".join(rep.csv_row()) + "\n", args.out)
    print(rep.to_json())
    return EXIT_OK


def cmd_exact(args) -> int:
    Q, P = _load_pair(args)
    if P.dims not in (2, 3):
        raise UsageError(f"exact regret needs d=2 or d=3 (got d={P.dims}); use 'eval' instead")
    value, w = exact_regret(Q, P, args.k, max_n=args.max_n)
    out = {"max_regret": value, "witness": [float(x) for x in w.direction], "k": args.k}
    text = json.dumps(out, sort_keys=True) + "\n"
    if args.out:
        _write(text, args.out)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_min_error(args) -> int:
    P = load_csv(args.inp)
    res, eps = min_error(P, args.r, k=args.k, seed=args.seed, net_mode=args.net,
                         use_skyline=args.skyline)
    return _emit_subset(res, P, args, "min-error")


def cmd_dist(args) -> int:
    Q, P = _load_pair(args)
    vals = regret_distribution(Q, P, args.k, args.samples, args.seed)
    _write("regret\n" + "".join(f"{v!r}\n" for v in vals.tolist()), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        spec = GridSpec.load(args.spec)
    except OSError as exc:
        raise DatasetError(f"{args.spec}: {exc.strerror or exc}") from exc
    except (json.JSONDecodeError, TypeError, KeyError) as exc:
        raise UsageError(f"{args.spec}: invalid grid spec ({exc})") from exc
    if args.reps is not None:
        spec.reps = args.reps
    if args.seed is not None:
        spec.seed = args.seed
    if args.samples is not None:
        spec.samples = args.samples
    if args.timeout is not None:
        spec.timeout = args.timeout or None
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.verbose else None
    records = bench_grid(spec, timing=not args.no_timing, progress=progress)
    if args.out in (None, "-"):
        sys.stdout.write(records_to_csv(records))
    else:
        try:
            append_records(args.out, records)
        except OSError as exc:
            raise DatasetError(str(exc)) from exc
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="regretset", description="k-regret minimizing sets")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, k=True, seed=True, samples=True):
        if k:
            sp.add_argument("--k", type=int, default=1)
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        if samples:
            sp.add_argument("--samples", type=int, default=None,
                            help="number of sampled directions")

    g = sub.add_parser("gen", help="generate a synthetic dataset")
    g.add_argument("--kind", choices=["sphere", "anticor", "skypoints"], required=True)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--sigma", type=float, default=None)
    g.add_argument("--cluster", type=int, default=4, help="skypoints followers per leader")
    g.add_argument("--out")
    common(g, k=False, samples=False)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("skyline", help="count / extract skyline points")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_skyline)

    for name, func in (("rms-hs", cmd_rms_hs), ("rms-rrs", cmd_rms_rrs)):
        a = sub.add_parser(name)
        a.add_argument("--in", dest="inp", required=True)
        a.add_argument("--eps", type=float, required=True)
        a.add_argument("--out")
        common(a)
        if name == "rms-hs":
            a.add_argument("--net", choices=["grid", "random", "staged", "auto"], default="grid")
            a.add_argument("--skyline", type=_on_off, default=True)
        else:
            a.add_argument("--batch", type=int, default=None)
            a.add_argument("--max-rounds", type=int, default=64)
        a.set_defaults(func=func)

    a = sub.add_parser("rms-greedy")
    a.add_argument("--in", dest="inp", required=True)
    a.add_argument("--eps", type=float, default=None)
    a.add_argument("--r", type=int, default=None)
    a.add_argument("--skyline", type=_on_off, default=True)
    a.add_argument("--out")
    common(a)
    a.set_defaults(func=cmd_rms_greedy)

    for name, func in (("eval", cmd_eval), ("exact", cmd_exact), ("dist", cmd_dist)):
        a = sub.add_parser(name)
        a.add_argument("--in", dest="inp", required=True)
        a.add_argument("--subset", required=True)
        a.add_argument("--out")
        common(a, seed=name != "exact", samples=name != "exact")
        if name == "exact":
            a.add_argument("--max-n", type=int, default=200,
                           help="largest n accepted for d=3 (cost grows like n^4)")
        a.set_defaults(func=func)

    a = sub.add_parser("min-error")
    a.add_argument("--in", dest="inp", required=True)
    a.add_argument("--r", type=int, required=True)
    a.add_argument("--net", choices=["grid", "random", "staged", "auto"], default="auto")
    a.add_argument("--skyline", type=_on_off, default=True)
    a.add_argument("--out")
    common(a, samples=False)
    a.set_defaults(func=cmd_min_error)

    b = sub.add_parser("bench", help="run a benchmark grid from a JSON spec")
    b.add_argument("--spec", "--in", dest="spec", required=True)
    b.add_argument("--out")
    b.add_argument("--reps", type=int, default=None)
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--samples", type=int, default=None)
    b.add_argument("--timeout", type=float, default=None, help="seconds per cell; 0 disables")
    b.add_argument("--no-timing", action="store_true",
                   help="leave wall_time_ms empty so repeated runs are byte-identical")
    b.add_argument("--verbose", action="store_true")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DatasetError as exc:
        print(f"regretset: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError, KeyError) as exc:
        print(f"regretset {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
