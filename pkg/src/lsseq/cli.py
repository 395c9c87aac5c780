"""Command-line interface: ``lsseq {gen,partition,verify,disc,regime,qmc}``.

Exit codes: 0 success, 1 I/O failure, 2 invalid parameters, 3 verification
mismatch.  Output is deterministic for a fixed invocation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Sequence

from .core import digit_string, iter_points
from .discrepancy import max_depth_for, prefix_discrepancies, regime_analysis
from .partition import ls_partition, partition_to_csv, verify_equivalence
from .qgamma import LSParams, ParameterError, QGammaElement
from .qmc import GENERATORS, generator_points, integrate, reports_to_csv, standard_integrands

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARAMS = 2
EXIT_MISMATCH = 3


class UsageError(Exception):
    """Bad option values that argparse cannot catch by itself."""


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _params(args: argparse.Namespace) -> LSParams:
    return LSParams(args.L, args.S)


def _positive(value: int | None, flag: str) -> int:
    if value is None:
        raise UsageError(f"{flag} is required")
    if value < 1:
        raise UsageError(f"{flag} must be >= 1, got {value}")
    return value


def cmd_gen(args: argparse.Namespace) -> tuple[int, str]:
    params = _params(args)
    count = _positive(args.count, "--count")
    rows = []
    for k, (n, digits, x) in enumerate(iter_points(params, args.mode), start=1):
        if isinstance(x, QGammaElement):
            exact, value = x.compact(), float(x)
        else:
            exact, value = "", x
        rows.append((k, n, digit_string(digits), exact, value))
        if k == count:
            break
    if args.format == "json":
        return EXIT_OK, _json([
            {"index": k, "n": n, "digits": d, "exact": e or None, "float": v}
            for k, n, d, e, v in rows
        ])
    return EXIT_OK, _csv(
        ["index", "n", "digits", "exact", "float"],
        [(k, n, d, e, repr(v)) for k, n, d, e, v in rows],
    )


def cmd_partition(args: argparse.Namespace) -> tuple[int, str]:
    params = _params(args)
    if args.depth is None or args.depth < 0:
        raise UsageError("--depth must be given and >= 0")
    part = ls_partition(args.depth, params)
    if args.format == "json":
        return EXIT_OK, _json([
            {
                "index": k,
                "left_exact": iv.left.compact(),
                "left_float": float(iv.left),
                "label": iv.label,
                "depth": iv.depth,
            }
            for k, iv in enumerate(part.intervals, start=1)
        ])
    return EXIT_OK, partition_to_csv(part)


def cmd_verify(args: argparse.Namespace) -> tuple[int, str]:
    params = _params(args)
    depth = _positive(args.depth, "--depth")
    report = verify_equivalence(depth, params)
    code = EXIT_OK if report.equal else EXIT_MISMATCH
    if args.format == "json":
        return code, _json({
            "L": params.L,
            "S": params.S,
            "depth": report.depth,
            "count": report.count,
            "equal": report.equal,
            "first_mismatch": report.first_mismatch,
        })
    return code, report.summary() + "\n"


def cmd_disc(args: argparse.Namespace) -> tuple[int, str]:
    params = _params(args)
    count = _positive(args.count, "--count")
    points = generator_points("ls", count, params)
    rows = []
    for N, d, ds in prefix_discrepancies(points):
        per_log = N * d / math.log(N) if N > 1 else None
        rows.append((N, d, ds, N * d, per_log))
    if args.format == "json":
        return EXIT_OK, _json({
            "L": params.L,
            "S": params.S,
            "rows": [
                {"N": N, "D": d, "D_star": ds, "N_D": nd, "N_D_over_log_N": pl}
                for N, d, ds, nd, pl in rows
            ],
        })
    return EXIT_OK, _csv(
        ["N", "D", "D_star", "N_D", "N_D_over_log_N"],
        [(N, repr(d), repr(ds), repr(nd), "" if pl is None else repr(pl)) for N, d, ds, nd, pl in rows],
    )


def cmd_regime(args: argparse.Namespace) -> tuple[int, str]:
    params = _params(args)
    max_depth = args.max_depth if args.max_depth is not None else max_depth_for(params, 10**5)
    try:
        report = regime_analysis(params, max_depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "csv":
        return EXIT_OK, _csv(
            ["n", "t_n", "D", "t_n_D"],
            [(r.n, r.t_n, repr(r.D), repr(r.scaled)) for r in report.rows],
        )
    return EXIT_OK, _json(report.to_dict())


def cmd_qmc(args: argparse.Namespace) -> tuple[int, str]:
    params = _params(args)
    count = _positive(args.count, "--count")
    Ns = sorted({10**k for k in range(1, 10) if 10**k < count} | {count})
    reports = []
    for gen in GENERATORS:
        points = generator_points(gen, count, params, args.seed)
        for f in standard_integrands(params):
            reports.append(integrate(gen, f, Ns, params, args.seed, points=points))
    if args.format == "json":
        return EXIT_OK, _json([
            {
                "generator": r.generator,
                "L": params.L,
                "S": params.S,
                "integrand": r.integrand,
                "seed": r.seed,
                "rows": [
                    {"N": row.N, "mean": row.mean, "error": row.error, "D_N": row.D_N, "koksma_ratio": row.koksma_ratio}
                    for row in r.rows
                ],
            }
            for r in reports
        ])
    return EXIT_OK, reports_to_csv(reports)


COMMANDS = {
    "gen": cmd_gen,
    "partition": cmd_partition,
    "verify": cmd_verify,
    "disc": cmd_disc,
    "regime": cmd_regime,
    "qmc": cmd_qmc,
}

DEFAULT_FORMAT = {"regime": "json", "verify": "text"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsseq",
        description="LS-sequences of points and partitions (generalized van der Corput).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--L", type=int, required=True, help="number of long intervals (>= 1)")
        p.add_argument("--S", type=int, required=True, help="number of short intervals (>= 0)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--out", default=None, help="write output here instead of stdout")
        p.add_argument("--mode", choices=("exact", "float"), default="exact")
        p.add_argument("--seed", type=int, default=0)

    helps = {
        "gen": "first COUNT points of the sequence",
        "partition": "the depth-DEPTH partition",
        "verify": "check the partition ordering against the radical inverse",
        "disc": "discrepancy of every prefix of the first COUNT points",
        "regime": "discrepancy growth of the partitions",
        "qmc": "integration errors against baseline generators",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        common(p)
        if name in ("gen", "disc", "qmc"):
            p.add_argument("--count", type=int, required=True)
        if name in ("partition", "verify"):
            p.add_argument("--depth", type=int, required=True)
        if name == "regime":
            p.add_argument("--max-depth", type=int, default=None, dest="max_depth")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = DEFAULT_FORMAT.get(args.command, "csv")
    try:
        code, text = COMMANDS[args.command](args)
    except (ParameterError, UsageError) as exc:
        print(f"lsseq {args.command}: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
            sys.stdout.flush()
    except OSError as exc:
        print(f"lsseq {args.command}: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
