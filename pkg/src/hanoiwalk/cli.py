"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 runtime failure, 3 no peak found.
Defaults may come from a ``key = value`` file given with ``--config``;
command-line flags take precedence.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from . import oracle, sweep
from .coins import CoinSpec
from .errors import HanoiWalkError
from .search import COST_MODELS, MAX_STEPS, PeakDetectorConfig, run_search
from .topology import NetworkSize, write_edge_csv

log = logging.getLogger("hanoiwalk")

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME, EXIT_NO_PEAK = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def read_config(path) -> dict:
    cfg = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            cfg[key.replace("-", "_")] = value
    return cfg


def _detector_args(p):
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--prominence", type=float, default=0.5)
    p.add_argument("--horizon-factor", type=float, default=20.0)
    p.add_argument("--max-steps", type=int, default=MAX_STEPS)
    p.add_argument("--cost-model", choices=COST_MODELS, default="repetition")


def build_parser():
    parser = _Parser(prog="hanoiwalk", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key = value defaults file")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("search", help="single search run")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--marked", type=int, default=sweep.DEFAULT_MARKED)
    p.add_argument("--output", default="search", help="prefix for _trace.csv and _result.json")
    _detector_args(p)

    p = sub.add_parser("sweep-eps", help="sweep epsilon at fixed n")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--grid", default="0.2:2.8:0.2")
    p.add_argument("--marked", type=int, default=sweep.DEFAULT_MARKED)
    p.add_argument("--output", default="sweep_eps.csv")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=None)
    _detector_args(p)

    p = sub.add_parser("sweep-n", help="sweep network size at fixed epsilon")
    p.add_argument("--epsilon", type=float, default=1.7)
    p.add_argument("--n-range", default="6:12")
    p.add_argument("--marked", type=int, default=sweep.DEFAULT_MARKED)
    p.add_argument("--output", default="sweep_n.csv")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--fit", choices=("none", "cost", "decay"), default="none")
    p.add_argument("--fit-output", default="fit.json")
    p.add_argument("--workers", type=int, default=None)
    _detector_args(p)

    p = sub.add_parser("fit", help="fit a scaling law to a sweep CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--model", choices=("cost", "decay"), default="cost")
    p.add_argument("--output", default="fit.json")

    p = sub.add_parser("oracle-check", help="compare sparse engine with dense matrices")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=1.7)
    p.add_argument("--marked", type=int, default=0)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--threshold", type=float, default=1e-10)

    p = sub.add_parser("export-graph", help="write the HN3 edge list")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--output", default="edges.csv")
    return parser, sub


def _detector(args):
    return PeakDetectorConfig(args.window, args.prominence, args.horizon_factor,
                              args.max_steps)


def _write_records(records, path, fmt):
    if fmt == "csv":
        sweep.write_sweep_csv(records, path)
        return
    rows = []
    for r in records:
        row = {k: getattr(r, k) for k in sweep.SWEEP_HEADER}
        if row["cost"] == float("inf"):
            row["cost"] = None
        rows.append(row)
    with open(path, "w") as fh:
        json.dump(rows, fh, indent=2)
        fh.write("\n")


def _prepare(args):
    """Validate parameters and return a zero-argument job; raises on bad input."""
    cmd = args.command
    if cmd == "search":
        size = NetworkSize(args.n)
        spec = CoinSpec(args.epsilon, args.marked)
        spec.check_marked(size)
        det = _detector(args)

        def job():
            res = run_search(size, spec, det, args.cost_model)
            with open(args.output + "_trace.csv", "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["t", "p"])
                for t, p in enumerate(res.trace.values):
                    w.writerow([t, format(float(p), ".17g")])
            with open(args.output + "_result.json", "w") as fh:
                json.dump(res.as_dict(), fh, indent=2)
                fh.write("\n")
            if not res.peak_found:
                print(f"no peak within {len(res.trace) - 1} steps")
                return EXIT_NO_PEAK
            print(f"t_f={res.t_f} p_max={res.p_max:.17g} cost={res.cost:.17g}")
            return EXIT_OK
        return job

    if cmd == "sweep-eps":
        size = NetworkSize(args.n)
        grid = sweep.parse_range(args.grid)
        for eps in grid:
            CoinSpec(eps, args.marked).check_marked(size)
        det = _detector(args)

        def job():
            recs = sweep.sweep_epsilon(size, grid, args.marked, det, args.cost_model,
                                       args.workers)
            _write_records(recs, args.output, args.format)
            print(f"{len(recs)} records -> {args.output}")
            return EXIT_OK
        return job

    if cmd == "sweep-n":
        ns = sweep.parse_range(args.n_range, integer=True)
        spec = CoinSpec(args.epsilon, args.marked)
        for n in ns:
            spec.check_marked(NetworkSize(n))
        det = _detector(args)

        def job():
            recs = sweep.sweep_size(spec, ns, det, args.cost_model, args.workers)
            _write_records(recs, args.output, args.format)
            print(f"{len(recs)} records -> {args.output}")
            if args.fit != "none":
                fitter = sweep.fit_cost_exponent if args.fit == "cost" else sweep.fit_success_decay
                fit = fitter(recs)
                sweep.write_fit_json(fit, args.fit_output)
                print(json.dumps(fit.parameters, sort_keys=True), f"r2={fit.r2:.6f}")
            return EXIT_OK
        return job

    if cmd == "fit":
        def job():
            recs = sweep.read_sweep_csv(args.input)
            fitter = sweep.fit_cost_exponent if args.model == "cost" else sweep.fit_success_decay
            fit = fitter(recs)
            sweep.write_fit_json(fit, args.output)
            print(json.dumps(fit.parameters, sort_keys=True), f"r2={fit.r2:.6f}")
            return EXIT_OK
        return job

    if cmd == "oracle-check":
        if args.n is None:
            checks = oracle.default_checks()
        else:
            if args.n > oracle.MAX_ORACLE_N:
                raise UsageError(f"oracle limited to n <= {oracle.MAX_ORACLE_N}")
            NetworkSize(args.n)
            spec = CoinSpec(args.epsilon, args.marked)
            spec.check_marked(args.n)
            checks = [(args.n, args.epsilon, args.marked, args.steps)]

        def job():
            failed = []
            for n, eps, k0, t in checks:
                spec = CoinSpec(eps, k0)
                dev = oracle.compare_engine(n, spec, t)
                unit = oracle.build_dense(n, spec).unitarity_error()
                ok = dev < args.threshold and unit < 1e-12
                print(f"check n={n} epsilon={eps:g} marked={k0} t={t} "
                      f"deviation={dev:.3e} unitarity={unit:.3e} status={'ok' if ok else 'FAIL'}")
                if not ok:
                    failed.append((n, eps, t))
            if failed:
                for n, eps, t in failed:
                    print(f"failed: n={n} epsilon={eps:g} t={t}", file=sys.stderr)
                return EXIT_RUNTIME
            return EXIT_OK
        return job

    if cmd == "export-graph":
        size = NetworkSize(args.n)

        def job():
            count = write_edge_csv(size, args.output)
            print(f"{count} edges -> {args.output}")
            return EXIT_OK
        return job

    raise UsageError("a subcommand is required")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser, sub = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            cfg = read_config(args.config)
            if args.command in sub.choices:
                sub.choices[args.command].set_defaults(**cfg)
                args = parser.parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
        job = _prepare(args)
    except (UsageError, HanoiWalkError, ValueError, OSError) as exc:
        print(f"hanoiwalk: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return job()
    except Exception as exc:  # noqa: BLE001
        log.debug("run failed", exc_info=True)
        print(f"hanoiwalk: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
