"""Command line entry point: young, trace, sum, check and equiv.

Exit codes: 0 on any completed computation (whatever its verdict),
2 on usage errors, 3 on computation errors (horizon, quadrature).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

from .conditions import CONDITION_IDS, check_all
from .corpus import corpus_get, corpus_names
from .equivalence import CSV_HEADER, corpus_rows, jsonable, run_theorem4
from .limits import SumConfig, default_schedule, geometric_schedule, summate
from .series import HorizonError
from .specfile import SpecError, load_series
from .summators import Method, trace
from .young import QuadratureError, YoungKernel, dilation_check, young_eval

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 2, 3


class UsageError(Exception):
    pass


def _num(x):
    """Round to 12 significant digits (floats only)."""
    if isinstance(x, bool) or not isinstance(x, float):
        return x
    return float(f"{x:.12g}")


def _round_tree(obj):
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round_tree(v) for v in obj]
    return _num(obj)


def to_json(obj) -> str:
    return json.dumps(_round_tree(jsonable(obj)), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


def parse_schedule(text: str) -> list:
    """``geometric:start,ratio,count`` or a comma-separated list of values."""
    try:
        if text.startswith("geometric:"):
            start, ratio, count = text.split(":", 1)[1].split(",")
            return geometric_schedule(float(start), float(ratio), int(count))
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --schedule {text!r}: {exc}") from None


def _method(args) -> Method:
    name = args.method
    beta, kappa = getattr(args, "beta", None), getattr(args, "kappa", None)
    if beta is not None and name not in ("riesz", "cesaro"):
        raise UsageError(f"--beta does not apply to method {name}")
    if kappa is not None and name != "gamma":
        raise UsageError(f"--kappa does not apply to method {name}")
    if name in ("riesz", "cesaro") and beta is None:
        raise UsageError(f"method {name} needs --beta")
    if name == "gamma" and kappa is None:
        raise UsageError("method gamma needs --kappa")
    try:
        return Method(name, beta if name in ("riesz", "cesaro") else kappa)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _series(args):
    try:
        return load_series(args.series)
    except SpecError as exc:
        raise UsageError(str(exc)) from None


def _positive(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="summakit", description="Summation methods for divergent series.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default):
        sp.add_argument("--out", help="write output to this file instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"), default=fmt_default)

    y = sub.add_parser("young", help="evaluate a Young function")
    y.add_argument("--kappa", type=float, required=True)
    y.add_argument("--x", type=float, required=True)
    y.add_argument("--check-dilation", type=float, metavar="TAU",
                   help="print the order-raising identity residual for kappa < TAU")
    y.add_argument("--out")

    def method_args(sp):
        sp.add_argument("--series", required=True, help="builtin:ID or path to a JSON series file")
        sp.add_argument("--method", required=True, choices=Method._NAMES)
        sp.add_argument("--beta", type=float)
        sp.add_argument("--kappa", type=float)
        sp.add_argument("--schedule", help="geometric:start,ratio,count or v1,v2,...")
        sp.add_argument("--tol", type=_positive, help="per-sample truncation tolerance (trace)"
                        " or acceptance tolerance (sum)")

    t = sub.add_parser("trace", help="mean values along a schedule")
    method_args(t)
    common(t, "csv")

    s = sub.add_parser("sum", help="extrapolated limit of a method")
    method_args(s)
    common(s, "json")

    c = sub.add_parser("check", help="growth and Tauberian condition reports")
    c.add_argument("--series", required=True)
    c.add_argument("--conditions", default="all", help="all or a comma-separated list of ids")
    c.add_argument("--p", type=float, default=2.0)
    common(c, "json")

    e = sub.add_parser("equiv", help="six-way equivalence report")
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--series")
    g.add_argument("--all-corpus", action="store_true")
    e.add_argument("--tol", type=_positive, default=1e-3)
    e.add_argument("--out")
    e.add_argument("--format", choices=("json", "csv"))
    return p


def _cmd_young(args) -> str:
    if args.kappa < 0 or args.x < 0:
        raise UsageError("--kappa and --x must be non-negative")
    if args.check_dilation is not None:
        if not args.check_dilation > args.kappa or not args.x > 0:
            raise UsageError("--check-dilation needs TAU > kappa and x > 0")
        return f"{dilation_check(args.kappa, args.check_dilation, args.x):.12g}\n"
    return f"{young_eval(YoungKernel(args.kappa), args.x):.12g}\n"


def _schedule_or_default(args):
    return parse_schedule(args.schedule) if args.schedule else None


def _cmd_trace(args) -> str:
    m = _method(args)
    series = _series(args)
    sched = _schedule_or_default(args)
    if sched is None:
        sched = default_schedule(m)
    try:
        tr = trace(m, series, sched, args.tol or 1e-9)
    except ValueError as exc:  # includes MethodInapplicableError
        raise UsageError(str(exc)) from None
    if args.format == "json":
        return to_json([{"parameter": s.param, "value": s.value, "certified": s.certified,
                         "bound": s.bound, "route": s.route} for s in tr.samples])
    rows = [[s.param, s.value.real, s.value.imag, s.certified] for s in tr.samples]
    return to_csv(["parameter", "re", "im", "certified"], rows)


def _cmd_sum(args) -> str:
    m = _method(args)
    series = _series(args)
    sched = _schedule_or_default(args)
    cfg = SumConfig(schedule=tuple(sched) if sched else None, tol=args.tol or 1e-4)
    try:
        est = summate(series, m, cfg)
    except ValueError as exc:  # includes MethodInapplicableError
        raise UsageError(str(exc)) from None
    doc = {
        "series": series.name,
        "method": m.name,
        "params": {} if m.param is None else {"kappa" if m.name == "gamma" else "beta": m.param},
        "value": est.value,
        "error": est.error_estimate,
        "converged": est.converged,
        "certified": est.certified,
    }
    if est.side_certified is not None:
        doc["side_certified"] = est.side_certified
    if args.format == "csv":
        return to_csv(["series", "method", "value_re", "value_im", "error", "converged", "certified"],
                      [[series.name, m.label, est.value.real, est.value.imag, est.error_estimate,
                        est.converged, est.certified]])
    return to_json(doc)


def _cmd_check(args) -> str:
    series = _series(args)
    if args.conditions.strip() == "all":
        ids = None
    else:
        ids = [s.strip() for s in args.conditions.split(",") if s.strip()]
        bad = [i for i in ids if i not in CONDITION_IDS]
        if bad:
            raise UsageError(f"unknown condition ids {bad}; known: {', '.join(CONDITION_IDS)}")
    if not args.p > 1:
        raise UsageError("--p must exceed 1")
    reps = check_all(series, ids, args.p)
    if args.format == "csv":
        rows = [[r.condition_id, r.measured_constant, r.fitted_exponent, r.verdict,
                 r.probe_range[0], r.probe_range[1], r.detail] for r in reps]
        return to_csv(["condition_id", "measured_constant", "fitted_exponent", "verdict",
                       "probe_min", "probe_max", "detail"], rows)
    return to_json([r.to_dict() for r in reps])


def _cmd_equiv(args) -> str:
    if args.all_corpus:
        reports = [run_theorem4(corpus_get(n), tol=args.tol) for n in corpus_names()]
        if args.format == "json":
            return to_json([r.to_dict() for r in reports])
        return to_csv(CSV_HEADER, corpus_rows(reports))
    rep = run_theorem4(_series(args), tol=args.tol)
    if args.format == "csv":
        return to_csv(CSV_HEADER, corpus_rows([rep]))
    return to_json(rep.to_dict())


_COMMANDS = {"young": _cmd_young, "trace": _cmd_trace, "sum": _cmd_sum,
             "check": _cmd_check, "equiv": _cmd_equiv}


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        out = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"summakit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HorizonError, QuadratureError) as exc:
        print(f"summakit {args.command}: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
