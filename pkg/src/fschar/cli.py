"""Command-line front end.

Data (series, matrices, reports) goes to stdout; progress and timings go to stderr.

Exit codes: 0 success / agreement, 1 discrepancy found by ``verify`` or
``det-check``, 2 usage error (bad arguments, unsupported weight, nothing to compare).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .admissible import Weight, count_configs, enumerate_admissible
from .cache import ENV_VAR, SeriesCache
from .errors import CacheCorrupt, FSCharError
from .fermionic import binom_matrix_det, matrices_payload
from .runner import FORMS, METHODS, NothingToCompare, compute, verify

log = logging.getLogger("fschar")

EXIT_OK, EXIT_DISCREPANCY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _weight(text: str) -> Weight:
    try:
        return Weight.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fschar",
        description="Characters of Feigin-Stoyanovsky type subspaces W(Lambda) for affine sl(3).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    diag = argparse.ArgumentParser(add_help=False)
    diag.add_argument("-v", "--verbose", action="store_true", help="timings and progress on stderr")

    common = argparse.ArgumentParser(add_help=False, parents=[diag])
    common.add_argument("--weight", type=_weight, required=True, help="k0,k1,k2")
    common.add_argument("--cutoff", type=_nonneg, required=True, help="largest q-degree D")
    common.add_argument("--cache-dir", default=None, help=f"series cache (overrides ${ENV_VAR})")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("configs", parents=[common, fmt], help="count admissible configurations")
    p.add_argument("--ell", type=_positive, default=2, help="rank l of sl(l+1); characters need l=2")
    p.add_argument("--list", action="store_true", help="emit each configuration as a JSON line")

    sub.add_parser("qp", parents=[common, fmt], help="count quasi-particle basis monomials")

    p = sub.add_parser("fermionic", parents=[common, fmt], help="evaluate a fermionic sum")
    p.add_argument("--form", choices=tuple(FORMS), default="m")

    p = sub.add_parser("matrices", parents=[diag], help="print Q, L, R as JSON")
    p.add_argument("--weight", type=_weight, required=True)

    p = sub.add_parser("verify", parents=[common], help="compare all methods")
    p.add_argument("--methods", default=",".join(METHODS), help="comma-separated subset of " + ",".join(METHODS))

    p = sub.add_parser("det-check", parents=[diag], help="check det A_{p,r} = 1 on a grid")
    p.add_argument("--p-min", type=int, default=-20)
    p.add_argument("--p-max", type=int, default=20)
    p.add_argument("--r-max", type=_nonneg, default=10)
    return parser


def _emit_series(series, fmt: str, out) -> None:
    if fmt == "csv":
        out.write(series.to_csv())
    else:
        out.write(series.to_json() + "\n")


def _cmd_series(method: str, args, out) -> int:
    cache = SeriesCache.from_env(args.cache_dir)
    start = time.perf_counter()
    series = compute(method, args.weight, args.cutoff, jobs=args.jobs, cache=cache)
    log.info("%s (%s) to q^%d in %.3fs", method, args.weight, args.cutoff, time.perf_counter() - start)
    _emit_series(series, args.format, out)
    return EXIT_OK


def _cmd_configs(args, out) -> int:
    w = args.weight
    if len(w.components) != args.ell + 1:
        raise UsageError(f"--weight needs {args.ell + 1} components for --ell {args.ell}")
    if args.list:
        for conf in enumerate_admissible(w, args.ell, args.cutoff):
            out.write(json.dumps(conf.to_dict()) + "\n")
        return EXIT_OK
    if args.ell == 2:
        return _cmd_series("configs", args, out)
    counts = count_configs(w, args.ell, args.cutoff)
    rows = sorted(counts.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    if args.format == "csv":
        names = [f"n{i + 1}" for i in range(args.ell)]
        out.write(",".join(names + ["d", "coeff"]) + "\n")
        for (charges, d), c in rows:
            out.write(",".join(map(str, (*charges, d, c))) + "\n")
    else:
        doc = {
            "ell": args.ell,
            "cutoff": args.cutoff,
            "terms": [{"charges": list(ch), "d": d, "c": str(c)} for (ch, d), c in rows],
        }
        out.write(json.dumps(doc) + "\n")
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise UsageError(f"unknown method(s): {', '.join(unknown)}")
    cache = SeriesCache.from_env(args.cache_dir)
    report = verify(args.weight, args.cutoff, methods, jobs=args.jobs, cache=cache)
    for m in report.methods:
        log.info("%-12s %8.3fs  %d objects", m, report.timings.get(m, 0.0), report.counts.get(m, 0))
    for m, err in report.errors.items():
        log.warning("%s skipped: %s", m, err)
    out.write(json.dumps(report.to_dict()) + "\n")
    return EXIT_OK if report.ok else EXIT_DISCREPANCY


def _cmd_det_check(args, out) -> int:
    if args.p_min > args.p_max:
        raise UsageError("--p-min exceeds --p-max")
    failures = []
    checked = 0
    for p in range(args.p_min, args.p_max + 1):
        for r in range(args.r_max + 1):
            checked += 1
            det = binom_matrix_det(p, r)
            if det != 1:
                failures.append({"p": p, "r": r, "det": str(det)})
    doc = {"p_range": [args.p_min, args.p_max], "r_max": args.r_max, "checked": checked, "failures": failures}
    out.write(json.dumps(doc) + "\n")
    return EXIT_DISCREPANCY if failures else EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="[fschar] %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "configs":
            return _cmd_configs(args, out)
        if args.command == "qp":
            return _cmd_series("qp", args, out)
        if args.command == "fermionic":
            return _cmd_series(FORMS[args.form], args, out)
        if args.command == "matrices":
            out.write(json.dumps(matrices_payload(args.weight)) + "\n")
            return EXIT_OK
        if args.command == "verify":
            return _cmd_verify(args, out)
        if args.command == "det-check":
            return _cmd_det_check(args, out)
    except CacheCorrupt as exc:
        print(f"fschar: cache corrupt: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, NothingToCompare, FSCharError) as exc:
        print(f"fschar: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
