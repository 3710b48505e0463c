"""Command-line front end: ``hhineq {means,bound,props,verify}``.

Exit status: 0 success, 1 an applicable inequality was violated beyond
slack, 2 invalid input (parse, domain or parameter errors).
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import Optional, Sequence

from . import __version__, hhcore
from .exprdsl import DomainError, ParseError, parse
from .jsonio import dumps
from .means import Interval, mean_set
from .props import PropParams, Sweep, proposition
from .verify import DEFAULT_Q_LIST, config_digest, gen_corpus, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("output and tolerances")
    g.add_argument("--format", choices=("text", "json", "csv"), default="text")
    g.add_argument("--json", dest="format", action="store_const", const="json",
                   help="shorthand for --format json")
    g.add_argument("--precision", type=int, default=12,
                   help="significant digits in text output (JSON always carries full doubles)")
    g.add_argument("--rel-tol", type=float, default=hhcore.DEFAULT.rel_tol)
    g.add_argument("--slack-floor", type=float, default=hhcore.DEFAULT.slack_floor)
    g.add_argument("--shape-tol", type=float, default=hhcore.DEFAULT.shape_tol)
    g.add_argument("--shape-grid", type=int, default=hhcore.DEFAULT.shape_grid)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="hhineq", description="Numerical checks of Hadamard-type inequalities.",
        epilog="exit status: 0 ok, 1 inequality violated, 2 invalid input")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("means", parents=[common], help="special means of (a, b)")
    p.add_argument("a", type=float)
    p.add_argument("b", type=float)
    p.add_argument("--p", type=float, help="also report the generalised logarithmic mean L_p")
    p.add_argument("--extend", action="store_true", help="allow p = 0 and p = -1 as limits")

    p = sub.add_parser("bound", parents=[common], help="deviation and bounds for one function")
    p.add_argument("--f", required=True, help="expression in x, e.g. '1/x'")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--q", type=float, action="append", default=[],
                   help="exponent for T2 (q > 1) and T3 (q >= 1); repeatable")
    p.add_argument("--classical", action="store_true", help="add the four trapezoid bounds")

    p = sub.add_parser("props", parents=[common], help="printed propositions vs generic bounds")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--q", type=float, default=2.0)
    p.add_argument("--k", type=int, action="append", help="proposition index; repeatable")
    p.add_argument("--all", action="store_true", help="all nine propositions")

    p = sub.add_parser("verify", parents=[common], help="seeded corpus through the full suite")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--range", type=float, nargs=2, default=(0.1, 10.0), metavar=("LO", "HI"))
    p.add_argument("--q-list", type=float, nargs="*", default=list(DEFAULT_Q_LIST))
    return parser


def _config(args) -> hhcore.Config:
    if not 1e-14 <= args.rel_tol <= 1e-3:
        raise UsageError("--rel-tol must lie in [1e-14, 1e-3]")
    if args.shape_grid < 8:
        raise UsageError("--shape-grid must be at least 8")
    return hhcore.Config(args.rel_tol, args.slack_floor, args.shape_tol, args.shape_grid)


def _interval(a, b) -> Interval:
    try:
        return Interval(a, b)
    except ValueError:
        raise UsageError(f"require 0 < a < b (got a={a:g}, b={b:g})") from None


def _num(x, digits) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return f"{x:.{digits}g}"
    return str(x)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else (f"{v:.17g}" if isinstance(v, float) else v) for v in row])
    return buf.getvalue()


def _envelope(config: dict, result: dict) -> str:
    config = {**config, "digest": config_digest(config)}
    return dumps({"tool_version": __version__, "config": config, "result": result}, indent=2) + "\n"


# --------------------------------------------------------------------------
# subcommands; each returns (text to print, exit status)


def cmd_means(args) -> tuple[str, int]:
    iv = _interval(args.a, args.b)
    try:
        ms = mean_set(iv, args.p, extend=args.extend)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    d = ms.as_dict()
    cfg = {"command": "means", "a": iv.a, "b": iv.b, "p": args.p, "extend": args.extend}
    if args.format == "json":
        return _envelope(cfg, d), EXIT_OK
    if args.format == "csv":
        return _csv(list(d), [list(d.values())]), EXIT_OK
    lines = [f"{k:>2} = {_num(v, args.precision)}" for k, v in d.items() if k != "p"]
    if ms.Lp is not None:
        lines[-1] = f"Lp = {_num(ms.Lp, args.precision)}  (p = {ms.p:g})"
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_bound(args) -> tuple[str, int]:
    config = _config(args)
    iv = _interval(args.a, args.b)
    try:
        f = parse(args.f)
    except ParseError as exc:
        raise UsageError(f"cannot parse --f: {exc}") from None
    if any(q < 1 for q in args.q):
        raise UsageError("--q must be >= 1")
    try:
        report = hhcore.bound_report(f, iv, args.q, classical=args.classical, config=config)
    except (DomainError, hhcore.QuadratureError) as exc:
        raise UsageError(str(exc)) from None
    failed = report.violations or not report.lemma_holds or (
        report.hadamard is not None and report.hadamard.holds is False)
    status = EXIT_VIOLATION if failed else EXIT_OK
    d = report.as_dict()
    cfg = {"command": "bound", "f": f.text, "a": iv.a, "b": iv.b,
           "q": sorted(set(args.q)), "classical": args.classical, **config.as_dict()}
    if args.format == "json":
        return _envelope(cfg, d), status
    rows = [[b["label"], b["q"], b["target"], b["value"], b["lhs"], b["margin"],
             b["precondition"]["mode"], b["precondition"]["passed"], b["status"]]
            for b in d["bounds"]]
    if args.format == "csv":
        header = ["label", "q", "target", "value", "lhs", "margin",
                  "precondition", "precondition_passed", "status"]
        return _csv(header, rows), status
    n = args.precision
    out = [
        f"f(x) = {f.text} on [{iv.a:g}, {iv.b:g}]",
        f"deviation          = {_num(report.deviation.value, n)}  (err {report.deviation.err:.2g})",
        f"lemma rhs          = {_num(report.lemma_rhs.value, n)}  "
        f"(residual {d['lemma_residual']:.2g}, {'ok' if report.lemma_holds else 'MISMATCH'})",
    ]
    if report.trapezoid is not None:
        out.append(f"trapezoid deviation = {_num(report.trapezoid.value, n)}")
    out.append("")
    out.append(f"{'bound':<8}{'q':>5}  {'value':>20}  {'margin':>20}  {'hypothesis':<22}status")
    for label, q, target, value, lhs, margin, mode, passed, st in rows:
        power = "" if q in (None, 1.0) else f"^{q:g}"
        hyp = f"|f'|{power} {mode} " + ("ok" if passed else "fails")
        out.append(f"{label:<8}{_num(q, 3):>5}  {_num(value, n):>20}  {_num(margin, n):>20}  "
                   f"{hyp:<22}{st}")
    h = report.hadamard
    if h is not None:
        out.append("")
        rel = {"convex": "<=", "concave": ">="}.get(h.shape, "?")
        verdict = {True: "holds", False: "VIOLATED", None: "not applicable"}[h.holds]
        out.append(f"Hadamard ({h.shape} f, {h.direction}): {_num(h.midpoint, n)} {rel} "
                   f"{_num(h.mean.value, n)} {rel} {_num(h.endpoints, n)}  {verdict}")
    return "\n".join(out) + "\n", status


def cmd_props(args) -> tuple[str, int]:
    config = _config(args)
    iv = _interval(args.a, args.b)
    ks = list(range(1, 10)) if args.all else sorted(set(args.k or [1]))
    sweep = Sweep()
    try:
        for k in ks:
            sweep.reports.append(proposition(PropParams(k, iv, args.n, args.q), config))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    status = EXIT_OK if all(r.holds_generic for r in sweep) else EXIT_VIOLATION
    cfg = {"command": "props", "a": iv.a, "b": iv.b, "n": args.n, "q": args.q, "k": ks,
           **config.as_dict()}
    rows = [r.as_dict() for r in sweep]
    if args.format == "json":
        counts = {str(k): v for k, v in sweep.discrepancy_counts().items()}
        return _envelope(cfg, {"propositions": rows, "counts": counts}), status
    header = ["k", "function", "lhs_paper", "lhs_true", "rhs_paper", "rhs_generic",
              "lhs_discrepancy", "rhs_discrepancy", "holds_generic"]
    if args.format == "csv":
        return _csv(header, [[r[h] for h in header] for r in rows]), status
    n = args.precision
    out = [f"{'k':>2}  {'f':<8}{'lhs printed':>18}{'lhs true':>18}{'rhs printed':>18}"
           f"{'rhs generic':>18}  discrepancy   generic"]
    for r in rows:
        flags = ",".join(s for s, on in (("lhs", r["lhs_discrepancy"]),
                                         ("rhs", r["rhs_discrepancy"])) if on) or "none"
        out.append(f"{r['k']:>2}  {r['function']:<8}{_num(r['lhs_paper'], n):>18}"
                   f"{_num(r['lhs_true'], n):>18}{_num(r['rhs_paper'], n):>18}"
                   f"{_num(r['rhs_generic'], n):>18}  {flags:<13} "
                   f"{'holds' if r['holds_generic'] else 'FAILS'}")
    return "\n".join(out) + "\n", status


def cmd_verify(args) -> tuple[str, int]:
    config = _config(args)
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    lo, hi = args.range
    if not 0 < lo < hi:
        raise UsageError("--range needs 0 < LO < HI")
    if any(q < 1 for q in args.q_list):
        raise UsageError("--q-list entries must be >= 1")
    corpus = gen_corpus(args.seed, args.count, (lo, hi), args.q_list or [1.0], config)
    extra = {"seed": args.seed, "count": args.count, "range": [lo, hi]}
    report = run_suite(corpus, args.q_list, config, seed=args.seed, extra_config=extra)
    status = EXIT_OK if report.passed else EXIT_VIOLATION
    d = report.as_dict()
    cfg = {"command": "verify", **report.config}
    if args.format == "json":
        return _envelope(cfg, d), status
    rows = [[k, v["holds"], v["violated"], v["not_applicable"]] for k, v in d["stats"].items()]
    if args.format == "csv":
        return _csv(["check", "holds", "violated", "not_applicable"], rows), status
    out = [
        f"seed {args.seed}: {report.cases} cases ({report.rejected} draws rejected), "
        f"{report.checks} checks, {len(report.violations)} violations, "
        f"{len(report.skips)} skipped",
        "",
        f"{'check':<14}{'holds':>7}{'violated':>10}{'n/a':>6}",
    ]
    out += [f"{k:<14}{h:>7}{v:>10}{na:>6}" for k, h, v, na in rows]
    for v in report.violations:
        out.append(f"VIOLATION {v['check']} q={_num(v['q'], 3)} f={v['f']} "
                   f"[{v['a']!r}, {v['b']!r}] lhs={v['lhs']!r} bound={v['bound']!r}")
    return "\n".join(out) + "\n", status


COMMANDS = {"means": cmd_means, "bound": cmd_bound, "props": cmd_props, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, status = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hhineq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
