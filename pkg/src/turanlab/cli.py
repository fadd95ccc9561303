"""Command-line front end; emits CSV or JSON for every operation.

Exit codes: 0 success, 1 domain error (one-line diagnostic on stderr),
2 usage error (argparse).  Floating values in CSV are printed with 17
significant digits so round-trips are lossless; JSON output is emitted
with sorted keys so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import bounds as _bounds
from . import constructions as _constructions
from . import levelsets as _levelsets
from . import search as _search
from .classes import ClassSpec, IncompleteSpec, sample
from .errors import TuranLabError
from .poly import Interval, from_payload, from_zeros, to_payload
from .search import SearchConfig


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(obj, sort_keys=True, indent=2) + "\n", out)


def _csv_cell(v) -> str:
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(v, sort_keys=True)
    return _fmt(v)


def _emit_csv(header, rows, out: str | None) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])
    _emit(buf.getvalue(), out)


def _emit_report(obj: dict, args) -> None:
    """Single-record report: JSON object, or one-row CSV when asked."""
    if args.format == "csv":
        keys = sorted(obj)
        _emit_csv(keys, [[obj[k] for k in keys]], args.out)
    else:
        _emit_json(obj, args.out)


def _load_poly(args):
    if getattr(args, "poly", None):
        with open(args.poly) as fh:
            return from_payload(json.load(fh))
    raise ValueError("a polynomial file is required (--poly)")


def _interval(args) -> Interval:
    if getattr(args, "interval", None):
        return Interval(args.interval[0], args.interval[1])
    return Interval()


def _search_config(args) -> SearchConfig:
    return SearchConfig(budget=args.budget, restarts=args.restarts,
                        seed=args.seed)


def _cmd_ratio(args) -> int:
    P = _load_poly(args)
    cv = _bounds.turan_ratio(P, _interval(args))
    obj = {"ratio": cv.value, "err": cv.err, "method": cv.method}
    if args.format == "csv":
        _emit_csv(["ratio", "err", "method"],
                  [[cv.value, cv.err, cv.method]], args.out)
    else:
        _emit_json(obj, args.out)
    return 0


def _cmd_verdict(args) -> int:
    P = _load_poly(args)
    spec = ClassSpec(args.n, args.k, pin_interval_zero=args.pin)
    v = _bounds.evaluate_verdict(P, spec)
    rows = [[args.n, args.k, v.ratio.value, v.ratio.err, b.source, b.lower, ok]
            for b, ok in zip(v.brackets, v.passes)]
    if args.format == "json":
        _emit_json({
            "ratio": v.ratio.value, "err": v.ratio.err,
            "brackets": [{"source": b.source, "lower": b.lower,
                          "upper": b.upper, "pass": ok}
                         for b, ok in zip(v.brackets, v.passes)],
        }, args.out)
    else:
        _emit_csv(["n", "k", "ratio", "err", "bound_source", "bound_value", "pass"],
                  rows, args.out)
    return 0


def _cmd_sample(args) -> int:
    spec = ClassSpec(args.n, args.k, pin_interval_zero=args.pin)
    P = sample(spec, seed=args.seed)
    _emit_report(to_payload(P), args)
    return 0


def _cmd_lemma31(args) -> int:
    Q = _load_poly(args)
    rep = _levelsets.small_logderiv_measure(Q, args.delta, _interval(args))
    _emit_report(rep.to_payload(), args)
    return 0


def _cmd_lemma32(args) -> int:
    if args.zeros is not None:
        zeros = [complex(z[0], z[1]) for z in json.loads(args.zeros)]
        if args.deg is not None and args.deg != len(zeros):
            raise ValueError(f"--deg {args.deg} does not match "
                             f"{len(zeros)} zeros")
        R = from_zeros(1.0, zeros)
    else:
        R = _load_poly(args)
    rep = _levelsets.large_logderiv_measure(R, args.alpha, _interval(args))
    _emit_report(rep.to_payload(), args)
    return 0


def _cmd_decay(args) -> int:
    P = _load_poly(args)
    if args.mode == "incomplete":
        rep = _levelsets.incomplete_decay_check(P, args.n, args.k)
    else:
        rep = _levelsets.flipped_decay_check(P, args.n, args.k)
    _emit_report(rep.to_payload(), args)
    return 0


def _cmd_search(args) -> int:
    spec = ClassSpec(args.n, args.k, pin_interval_zero=args.pin)
    res = _search.minimize_ratio(spec, _search_config(args))
    obj = {
        "n": args.n, "k": args.k,
        "ratio": res.ratio.value, "err": res.ratio.err,
        "lower": res.bracket.lower, "upper": res.bracket.upper,
        "within_bracket": res.within_bracket,
        "evals": res.evals, "restarts": res.restarts_used,
        "best": to_payload(res.best),
    }
    _emit_report(obj, args)
    return 0


def _cmd_sweep(args) -> int:
    ns = [int(s) for s in args.n_values.split(",") if s.strip()]
    ks = [int(s) for s in args.k_values.split(",") if s.strip()]
    table = _search.frontier_sweep(ns, ks, _search_config(args), pin=args.pin)
    if args.format == "json":
        _emit_json({
            "slope": table.slope,
            "monotone_in_n": {str(k): v for k, v in table.monotone_in_n.items()},
            "monotone_in_k": {str(n): v for n, v in table.monotone_in_k.items()},
            "cells": [
                {"n": r.n, "k": r.k, "error": r.error,
                 "ratio": None if r.result is None else r.result.ratio.value}
                for r in table.rows],
        }, args.out)
        return 0
    rows = []
    for r in table.rows:
        if r.result is None:
            rows.append([r.n, r.k, "", "", "", "", "failed", 0, 0])
            continue
        res = r.result
        rows.append([r.n, r.k, res.ratio.value, res.ratio.err,
                     res.bracket.lower,
                     "" if res.warm_best is None else res.warm_best,
                     res.within_bracket, res.restarts_used, res.evals])
    _emit_csv(["n", "k", "ratio", "err", "lower_bound", "upper_construction",
               "within_bracket", "restarts_used", "evals"], rows, args.out)
    return 0


def _cmd_construct(args) -> int:
    rep = _constructions.thm24_construct(args.n, args.k, _search_config(args))
    obj = {
        "ratio": rep.ratio.value, "err": rep.ratio.err,
        "member": rep.class_check.ok,
        "details": rep.details,
        "P": to_payload(rep.P),
        "Q": to_payload(rep.intermediate["Q"]),
        "R": to_payload(rep.intermediate["R"]),
    }
    if args.out:
        for name in ("Q", "R", "P"):
            poly = rep.intermediate.get(name, rep.P)
            with open(f"{args.out}_{name}.json", "w") as fh:
                json.dump(to_payload(poly), fh, sort_keys=True, indent=2)
        print(json.dumps({"written": [f"{args.out}_{s}.json" for s in "QRP"]},
                         sort_keys=True))
    else:
        if args.format == "csv":
            keys = sorted(obj)
            _emit_csv(keys, [[obj[k] for k in keys]], None)
        else:
            _emit_json(obj, None)
    return 0


def _cmd_remark(args) -> int:
    rep = _constructions.remark_family(args.epsilon, args.n)
    obj = {
        "epsilon": args.epsilon, "n": args.n,
        "m": rep.details["m"],
        "ratio": rep.ratio.value, "err": rep.ratio.err,
        "bound": rep.predicted_bound,
        "norm": rep.details["norm"],
        "argmax": rep.details["derivative_argmax"],
        "argmax_power": rep.details["argmax_power"],
        "closed_form": rep.details["closed_form_argmax_power"],
    }
    _emit_report(obj, args)
    return 0


def _add_common(p, *, n=False, k=False, pin=False, seed=False, budget=False,
                poly=False, interval=False):
    if n:
        p.add_argument("--n", type=int, required=True)
    if k:
        p.add_argument("--k", type=int, required=True)
    if pin:
        p.add_argument("--pin", action="store_true",
                       help="require a zero on [-1,1]")
    if seed:
        p.add_argument("--seed", type=int, default=0)
    if budget:
        p.add_argument("--budget", type=int, default=4000)
        p.add_argument("--restarts", type=int, default=8)
    if poly:
        p.add_argument("--poly", help="polynomial JSON file")
    if interval:
        p.add_argument("--interval", nargs=2, type=float, metavar=("LO", "HI"))
    p.add_argument("--out", help="write output to this path")
    p.add_argument("--format", choices=("csv", "json"), default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="turanlab",
        description="Derivative sup-norm ratios for polynomials with "
                    "restricted zeros: certified norms, level-set measures, "
                    "bound verdicts, extremal search, constructions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ratio", help="certified ||P'||/||P|| on an interval")
    _add_common(p, poly=True, interval=True)
    p.set_defaults(fn=_cmd_ratio, fmt_default="json")

    p = sub.add_parser("verdict", help="ratio vs every applicable bound")
    _add_common(p, n=True, k=True, pin=True, poly=True)
    p.set_defaults(fn=_cmd_verdict, fmt_default="csv")

    p = sub.add_parser("sample", help="random class member (JSON polynomial)")
    _add_common(p, n=True, k=True, pin=True, seed=True)
    p.set_defaults(fn=_cmd_sample, fmt_default="json")

    p = sub.add_parser("lemma31", help="measure of {|Q'/Q| <= n*delta}")
    _add_common(p, poly=True, interval=True)
    p.add_argument("--delta", type=float, required=True)
    p.set_defaults(fn=_cmd_lemma31, fmt_default="json")

    p = sub.add_parser("lemma32", help="measure of {|R'/R| >= alpha}")
    _add_common(p, poly=True, interval=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--zeros", help="JSON [[re,im],...] as an inline "
                                   "alternative to --poly")
    p.add_argument("--deg", type=int, help="expected degree (validated)")
    p.set_defaults(fn=_cmd_lemma32, fmt_default="json")

    p = sub.add_parser("decay", help="pointwise decay checks")
    _add_common(p, n=True, k=True, poly=True)
    p.add_argument("--mode", choices=("incomplete", "flipped"),
                   default="incomplete")
    p.set_defaults(fn=_cmd_decay, fmt_default="json")

    p = sub.add_parser("search", help="minimize the ratio over a class")
    _add_common(p, n=True, k=True, pin=True, seed=True, budget=True)
    p.set_defaults(fn=_cmd_search, fmt_default="json")

    p = sub.add_parser("sweep", help="grid of searches + scaling summary")
    _add_common(p, pin=True, seed=True, budget=True)
    p.add_argument("--n-values", required=True, help="comma list, e.g. 2,4,8")
    p.add_argument("--k-values", required=True, help="comma list, e.g. 0,1")
    p.set_defaults(fn=_cmd_sweep, fmt_default="csv")

    p = sub.add_parser("construct", help="squared-argument pipeline Q->R->P")
    _add_common(p, n=True, k=True, seed=True, budget=True)
    p.set_defaults(fn=_cmd_construct, fmt_default="json")

    p = sub.add_parser("remark", help="roots-of-unity family (z^m-1)^n")
    _add_common(p, n=True, seed=False)
    p.add_argument("--epsilon", type=float, required=True)
    p.set_defaults(fn=_cmd_remark, fmt_default="json")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.format is None:
        args.format = args.fmt_default
    try:
        return args.fn(args)
    except (TuranLabError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
