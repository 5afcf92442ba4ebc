"""Command-line entry point: `macpiece <command> ...`.

Exit status is 0 when every hard check passes, 1 when a hard check fails
and 2 for invalid input.
"""
import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__, cache, figures, lw, piece, qt1, verify
from .macdonald import htilde, nabla
from .shapes import lw_frame, part
from .symfunc import BASES, SymF


def partition_arg(text):
    """'3,1' -> (3, 1); '' or '0' is the empty partition."""
    text = text.strip()
    if text in ("", "0", "()"):
        return ()
    try:
        parts = [int(x) for x in text.strip("()").split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a partition: {text!r}")
    if any(p < 0 for p in parts) or parts != sorted(parts, reverse=True):
        raise argparse.ArgumentTypeError(f"not a weakly decreasing list of positive integers: {text!r}")
    return part(parts)


def emit(args, obj, text):
    print(json.dumps(obj, sort_keys=True) if args.json else text)


def _csv(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _outdir(path):
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _label(lam):
    return ",".join(map(str, lam)) or "0"


# ------------------------------------------------------------ commands

def cmd_hhl(args):
    f = htilde(args.mu).convert(args.basis)
    emit(args, {"mu": list(args.mu), "value": f.to_json()}, str(f))
    return 0


def cmd_piece(args):
    I = piece.piece_poly(args.mu, args.lam, args.k)
    if args.qt1:
        exp = qt1.piece_qt1(args.mu, args.lam, args.k, check=True)
        obj = {"mu": list(args.mu), "lambda": list(args.lam), "k": args.k,
               "h_at_one": [{"index": list(lam), "coeff": str(c)} for lam, c in qt1.sorted_terms(exp)]}
        emit(args, obj, qt1.render_h(exp))
        return 0
    f = I.convert(args.basis)
    emit(args, {"mu": list(args.mu), "lambda": list(args.lam), "k": args.k, "value": f.to_json()}, str(f))
    return 0


def cmd_nabla(args):
    f = nabla(SymF.basis_element("s", args.lam), power=args.power).convert(args.basis)
    emit(args, {"lambda": list(args.lam), "power": args.power, "value": f.to_json()}, str(f))
    return 0


def cmd_lw(args):
    frame = lw_frame(args.lam, args.n, args.k)
    results = {}
    if args.path in ("direct", "both"):
        results["direct"] = lw.lw_direct(frame, args.a_cap)
    if args.path in ("det", "both"):
        results["det"] = lw.lw_via_det(frame, args.a_cap)
    values = list(results.values())
    agree = all(v == values[0] for v in values[1:])
    value = values[0].convert(args.basis)
    dinv_hist, area_hist = lw.statistics_histograms(frame, args.a_cap)
    obj = {"lambda": list(frame.lam), "n": frame.n, "k": frame.k, "adj": frame.adj,
           "path": args.path, "paths_agree": agree, "value": value.to_json()}
    hist_rows = [("statistic", "value", "count")]
    hist_rows += [("dinv", v, c) for v, c in dinv_hist] + [("area", v, c) for v, c in area_hist]
    if args.out:
        out = _outdir(args.out)
        stem = f"lw_{_label(frame.lam).replace(',', '-')}_n{frame.n}_k{frame.k}"
        (out / f"{stem}.json").write_text(json.dumps(obj, sort_keys=True, indent=1) + "\n")
        (out / f"{stem}_stats.csv").write_text(_csv(hist_rows))
        figures.histogram_figure(dinv_hist, area_hist, f"lambda=({_label(frame.lam)}) n={frame.n} k={frame.k}",
                                 out / f"{stem}_stats.png")
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(value)
        print(_csv(hist_rows), end="")
    if not agree:
        print("error: the direct and determinant paths disagree", file=sys.stderr)
        return 1
    return 0


def cmd_qt1_rd(args):
    values = qt1.rd_table(args.max_size)
    rows = [("lambda", "rd")] + [(f"({_label(lam)})", str(v)) for lam, v in values.items()]
    status = 0
    print(_csv(rows), end="")
    if args.check_observations:
        for name, case, ok, detail in qt1.observations_suite(args.max_size, values):
            print(f"# {'PASS' if ok else 'FAIL'} {name} {case}: {detail}")
            status |= 0 if ok else 1
    for lam, v in values.items():
        if lam in qt1.RD_TABLE and qt1.RD_TABLE[lam] != v:
            print(f"# FAIL RD{lam} = {v}, table value {qt1.RD_TABLE[lam]}", file=sys.stderr)
            status = 1
    if args.out:
        out = _outdir(args.out)
        (out / "rd.csv").write_text(_csv(rows))
        figures.rd_figure(values, out / "rd.png")
    return status


def cmd_qt1_w(args):
    exp = qt1.w_table(args.lam)
    emit(args, {"lambda": list(args.lam),
                "h_at_one": [{"index": list(lam), "coeff": str(c)} for lam, c in qt1.sorted_terms(exp)]},
         qt1.render_h(exp))
    return 0


def cmd_qt1_piece(args):
    exp = qt1.piece_qt1(args.mu, args.lam, args.k, check=True)
    print(qt1.render_h_tex(exp) if args.tex else qt1.render_h(exp))
    return 0


def cmd_verify(args):
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    status = 0
    reports = []
    for name in names:
        report = verify.run_suite(name, max_cells=args.max_cells, max_size=args.max_size)
        reports.append(report)
        if not report.ok:
            status = 1
        if not args.json:
            for c in report.cases:
                if c.status == "fail" or args.verbose:
                    line = f"{c.status.upper():6} {c.description}"
                    if c.status == "fail":
                        line += f"  expected {c.expected}, got {c.actual}"
                    if args.timings:
                        line += f"  [{c.elapsed:.3f}s]"
                    print(line)
            extra = ""
            if name == "dashboard":
                extra = f", {len(verify.dashboard_violations(report))} positivity violations"
            print(report.summary() + extra)
    if args.json:
        print(json.dumps([r.to_json(args.timings) for r in reports], sort_keys=True, indent=1))
    return status


def cmd_cache(args):
    if args.action == "list":
        for name in cache.entries():
            print(name)
    elif args.action == "clear":
        print(f"removed {cache.clear()} entries")
    else:
        print(cache.stamp())
    return 0


# ------------------------------------------------------------ parser

def build_parser():
    p = argparse.ArgumentParser(prog="macpiece", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, basis=True):
        sp.add_argument("--json", action="store_true", help="print JSON instead of text")
        if basis:
            sp.add_argument("--basis", choices=BASES, default="s")

    sp = sub.add_parser("hhl", help="modified Macdonald polynomial from the HHL sum")
    sp.add_argument("--mu", type=partition_arg, required=True)
    common(sp)
    sp.set_defaults(func=cmd_hhl)

    sp = sub.add_parser("piece", help="Macdonald piece polynomial")
    sp.add_argument("--mu", type=partition_arg, required=True)
    sp.add_argument("--lambda", dest="lam", type=partition_arg, default=())
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--qt1", action="store_true", help="h-expansion at q=t=1 (both paths)")
    common(sp)
    sp.set_defaults(func=cmd_piece)

    sp = sub.add_parser("nabla", help="nabla (or its inverse) applied to a Schur function")
    sp.add_argument("--lambda", dest="lam", type=partition_arg, required=True)
    sp.add_argument("--power", type=int, choices=(1, -1), default=1)
    common(sp)
    sp.set_defaults(func=cmd_nabla)

    sp = sub.add_parser("lw", help="Loehr-Warrington tableau sum and determinant")
    sp.add_argument("--lambda", dest="lam", type=partition_arg, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--path", choices=("direct", "det", "both"), default="both")
    sp.add_argument("--a-cap", type=int, default=None, help="first-coordinate truncation (default n)")
    sp.add_argument("--out", help="directory for JSON, CSV and PNG files")
    common(sp)
    sp.set_defaults(func=cmd_lw)

    sp = sub.add_parser("qt1", help="q=t=1 specializations")
    q = sp.add_subparsers(dest="qt1_command", required=True)
    r = q.add_parser("rd", help="relative dimensions as CSV")
    r.add_argument("--max-size", type=int, default=4)
    r.add_argument("--check-observations", action="store_true")
    r.add_argument("--out", help="directory for rd.csv and rd.png")
    r.set_defaults(func=cmd_qt1_rd)
    w = q.add_parser("w", help="h-expansion of nabla s_lambda at q=t=1")
    w.add_argument("--lambda", dest="lam", type=partition_arg, required=True)
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_qt1_w)
    pc = q.add_parser("piece", help="h-expansion of a piece polynomial at q=t=1")
    pc.add_argument("--mu", type=partition_arg, required=True)
    pc.add_argument("--lambda", dest="lam", type=partition_arg, default=())
    pc.add_argument("--k", type=int, required=True)
    pc.add_argument("--tex", action="store_true")
    pc.set_defaults(func=cmd_qt1_piece)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=verify.SUITES + ("all",))
    sp.add_argument("--max-cells", type=int, default=None)
    sp.add_argument("--max-size", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--timings", action="store_true")
    sp.add_argument("-v", "--verbose", action="store_true", help="list passing cases too")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("cache", help="inspect the on-disk H~ cache")
    sp.add_argument("action", choices=("list", "clear", "stamp"))
    sp.set_defaults(func=cmd_cache)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, ValueError) else 1


if __name__ == "__main__":
    sys.exit(main())
