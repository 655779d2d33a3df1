"""Command-line front end.

    nsmeans eval --mean neuman-sandor --a 1 --b 2
    nsmeans constants --format json
    nsmeans verify --family thm11 --points 1000000
    nsmeans sweep --family chain --points 200 --format csv --out chain.csv
    nsmeans probe --family thm12 --side upper --epsilon 1e-3

Exit status: 0 when every requested check passes, 1 when a violation is
found or a sharpness probe finds no witness, 2 on usage or domain errors.
Floats are written with ``repr`` (shortest round-trip form), so csv and json
output is byte-stable across runs; timings are only emitted with ``--timing``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .constants import constants
from .means import MeanKind, evaluate, make_pair
from .verifier import (
    DomainError,
    Family,
    NoWitnessFound,
    check_family,
    perturbed_params,
    sharpness_probe,
    sweep,
    sweep_rows,
)

CSV_COLUMNS = ("family", "a", "b", "x", "lower", "middle", "upper", "margin", "verdict")

_MEAN_ALIASES = {
    "A": MeanKind.ARITHMETIC,
    "G": MeanKind.GEOMETRIC,
    "L": MeanKind.LOGARITHMIC,
    "C": MeanKind.CONTRA_HARMONIC,
    "P": MeanKind.SEIFFERT_FIRST,
    "T": MeanKind.SEIFFERT_SECOND,
    "M": MeanKind.NEUMAN_SANDOR,
    "Lp": MeanKind.GENERALIZED_LOG,
}


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _table(rows, columns) -> str:
    cells = [[str(c) for c in columns]] + [[_fmt(r[c]) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _render(rows, columns, fmt, payload=None) -> str:
    if fmt == "json":
        return _json(payload if payload is not None else rows)
    if fmt == "csv":
        return _csv(rows, columns)
    return _table(rows, columns)


def _family(name: str) -> Family:
    try:
        return Family.parse(name)
    except ValueError as exc:
        raise UsageError(f"--family: {exc}") from None


def _pair(a, b):
    if a is None or b is None:
        raise UsageError("--a and --b are both required")
    try:
        return make_pair(a, b)
    except ValueError as exc:
        raise UsageError(f"--a/--b: {exc}") from None


def _params(args):
    if args.lower is None and args.upper is None:
        return None
    if args.lower is None or args.upper is None:
        raise UsageError("--lower and --upper must be given together")
    return (args.lower, args.upper)


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(args) -> tuple[str, int]:
    kind = _MEAN_ALIASES.get(args.mean)
    if kind is None:
        try:
            kind = MeanKind(args.mean)
        except ValueError:
            choices = ", ".join([k.value for k in MeanKind] + list(_MEAN_ALIASES))
            raise UsageError(f"--mean: unknown mean {args.mean!r}; choose from {choices}") from None
    if kind is MeanKind.GENERALIZED_LOG and args.p is None:
        raise UsageError("--p is required for the generalized-log mean")
    pair = _pair(args.a, args.b)
    value = evaluate(kind, pair, args.p)
    row = {"mean": kind.value, "a": pair.a, "b": pair.b, "p": args.p, "value": value}
    if args.format == "table":
        return f"{value!r}\n", 0
    return _render([row], ("mean", "a", "b", "p", "value"), args.format, row), 0


def cmd_constants(args) -> tuple[str, int]:
    table = constants().as_dict()
    rows = [{"name": k, "value": v} for k, v in table.items()]
    return _render(rows, ("name", "value"), args.format, table), 0


def cmd_verify(args) -> tuple[str, int]:
    params = _params(args)
    if args.a is not None or args.b is not None:
        if args.family == "all":
            raise UsageError("--family must name one family when --a/--b are given")
        family = _family(args.family)
        try:
            check = check_family(family, _pair(args.a, args.b), params)
        except DomainError as exc:
            raise UsageError(f"--a/--b: {exc}") from None
        row = check.as_row()
        return _render([row], CSV_COLUMNS, args.format, row), int(check.verdict.value == "violation")

    if args.points < 1:
        raise UsageError("--points must be at least 1")
    families = list(Family) if args.family == "all" else [_family(args.family)]
    if params is not None and len(families) > 1:
        raise UsageError("--lower/--upper need a single --family")
    reports = [sweep(f, args.points, params, workers=args.workers) for f in families]
    failed = any(not r.passed for r in reports)

    if args.format == "json":
        dicts = [r.as_dict(timing=args.timing) for r in reports]
        return _json(dicts[0] if len(dicts) == 1 else dicts), int(failed)
    if args.format == "csv":
        rows = [check_family(r.family, r.worst_witness, params).as_row() for r in reports]
        return _csv(rows, CSV_COLUMNS), int(failed)
    cols = ("family", "total", "violations", "indeterminate", "worst_margin", "witness_x")
    rows = [
        {"family": r.family.value, "total": r.total, "violations": r.violations,
         "indeterminate": r.indeterminate, "worst_margin": r.worst_margin,
         "witness_x": r.worst_witness.x}
        for r in reports
    ]
    if args.timing:
        cols += ("elapsed_ms",)
        for row, r in zip(rows, reports):
            row["elapsed_ms"] = round(r.elapsed * 1e3, 3)
    return _table(rows, cols), int(failed)


def cmd_sweep(args) -> tuple[str, int]:
    if args.points < 1:
        raise UsageError("--points must be at least 1")
    family = _family(args.family)
    checks = sweep_rows(family, args.points, _params(args))
    rows = [c.as_row() for c in checks]
    failed = any(c.verdict.value == "violation" for c in checks)
    return _render(rows, CSV_COLUMNS, args.format), int(failed)


def cmd_probe(args) -> tuple[str, int]:
    families = [Family.THM11, Family.THM12] if args.family == "all" else [_family(args.family)]
    sides = ["lower", "upper"] if args.side == "all" else [args.side]
    rows, failed = [], False
    for fam in families:
        for side in sides:
            try:
                params, end = perturbed_params(fam, side, args.epsilon)
            except ValueError as exc:
                raise UsageError(f"--family/--epsilon: {exc}") from None
            try:
                pair = sharpness_probe(fam, side, args.epsilon)
            except NoWitnessFound:
                failed = True
                rows.append({"family": fam.value, "side": side, "epsilon": args.epsilon,
                             "endpoint": end, "a": None, "b": None, "x": None,
                             "margin": None, "found": False})
                continue
            check = check_family(fam, pair, params)
            rows.append({"family": fam.value, "side": side, "epsilon": args.epsilon,
                         "endpoint": end, "a": pair.a, "b": pair.b, "x": pair.x,
                         "margin": check.margin, "found": True})
    cols = ("family", "side", "epsilon", "endpoint", "a", "b", "x", "margin", "found")
    return _render(rows, cols, args.format), int(failed)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsmeans", description="Neuman-Sandor mean bounds: evaluation and verification."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("eval", help="evaluate one mean")
    p.add_argument("--mean", required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--p", type=float, help="parameter of the generalized-log mean")
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("constants", help="print the sharp constants")
    common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("verify", help="sweep families and report violations")
    p.add_argument("--family", default="all")
    p.add_argument("--points", type=int, default=1_000_000)
    p.add_argument("--a", type=float, help="check one pair instead of sweeping")
    p.add_argument("--b", type=float)
    p.add_argument("--lower", type=float, help="override the lower constant")
    p.add_argument("--upper", type=float, help="override the upper constant")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall-clock times")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="export per-point checks over the sweep grid")
    p.add_argument("--family", required=True)
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--lower", type=float)
    p.add_argument("--upper", type=float)
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("probe", help="sharpness probes of the optimal constants")
    p.add_argument("--family", default="all", help="thm11, thm12 or all")
    p.add_argument("--side", choices=("lower", "upper", "all"), default="all")
    p.add_argument("--epsilon", type=float, default=1e-3)
    common(p)
    p.set_defaults(func=cmd_probe)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help/--version, 2 for usage
        return int(exc.code or 0)
    try:
        text, code = args.func(args)
    except UsageError as exc:
        print(f"nsmeans {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> int:
    return run()
