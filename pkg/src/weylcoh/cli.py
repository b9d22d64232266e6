"""Command-line front end.

    weylcoh mul --p 2 --n 1 "d1" "d1"
    weylcoh matrix --p 2 --n 1 --level 1 "x1"
    weylcoh present --p 2 --n 1 --side left "d1"
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .arith import FpConfig
from .chase import level_of, matrix_of
from .coherence import present_ideal, truncated_syzygy_oracle, verify_presentation
from .textio import (
    ParseError,
    parse_many,
    parse_operator,
    parse_polynomial,
    presentation_to_dict,
    read_operator_file,
    read_presentation,
)
from .weyl import weyl_apply


class UsageError(Exception):
    pass


def _common(suppress: bool) -> argparse.ArgumentParser:
    default = argparse.SUPPRESS if suppress else None
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=default, help="field characteristic")
    common.add_argument("--n", type=int, default=default, help="number of variables")
    common.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="machine-readable output")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weylcoh", parents=[_common(False)],
                                     description="Weyl algebra over F_p: normal forms, "
                                                 "matrix realizations and ideal presentations")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(True)

    sp = sub.add_parser("normalize", parents=[common], help="print the normal form")
    sp.add_argument("expr")

    sp = sub.add_parser("mul", parents=[common], help="multiply operators left to right")
    sp.add_argument("exprs", nargs="+")

    sp = sub.add_parser("act", parents=[common], help="apply an operator to a polynomial")
    sp.add_argument("expr")
    sp.add_argument("poly")

    sp = sub.add_parser("level", parents=[common], help="filtration level of an operator")
    sp.add_argument("expr")

    sp = sub.add_parser("matrix", parents=[common], help="matrix over the Frobenius subring")
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("expr")

    for name, helptext in (("present", "syzygies of a one-sided ideal"),
                           ("oracle", "truncated syzygies by linear algebra")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--side", choices=("left", "right"), default="left")
        sp.add_argument("--file", help="operator file supplying the generators")
        sp.add_argument("exprs", nargs="*")
        if name == "present":
            sp.add_argument("--level", type=int)
        else:
            sp.add_argument("--bound", type=int, required=True)

    sp = sub.add_parser("verify", parents=[common], help="re-check a presentation file")
    sp.add_argument("file")
    return parser


def _config(args) -> tuple:
    if args.p is None or args.n is None:
        raise UsageError("--p and --n are required")
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    try:
        return FpConfig(args.p), args.n
    except ValueError as e:
        raise UsageError(str(e)) from e


def _generators(args):
    if args.file:
        of = read_operator_file(args.file)
        if args.p is not None and args.p != of.p or args.n is not None and args.n != of.n:
            raise UsageError(f"file header p={of.p} n={of.n} disagrees with --p/--n")
        cfg, n = of.cfg, of.n
        gens = list(of.operators.values()) + parse_many(args.exprs, cfg, n)
    else:
        cfg, n = _config(args)
        gens = parse_many(args.exprs, cfg, n)
    if not gens:
        raise UsageError("no generators given")
    return gens


def _emit(args, text: str, data: dict, out) -> None:
    if args.json:
        out.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def run_command(argv: List[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _dispatch(args, out)
    except (ParseError, UsageError, ValueError, OSError) as e:
        err.write(f"error: {e}\n")
        return 2


def _dispatch(args, out) -> int:
    cmd = args.command
    if cmd == "normalize":
        cfg, n = _config(args)
        d = parse_operator(args.expr, cfg, n)
        _emit(args, d.to_text(), {"result": d.to_text()}, out)
    elif cmd == "mul":
        cfg, n = _config(args)
        ops = parse_many(args.exprs, cfg, n)
        prod = ops[0]
        for d in ops[1:]:
            prod = prod * d
        _emit(args, prod.to_text(), {"result": prod.to_text()}, out)
    elif cmd == "act":
        cfg, n = _config(args)
        d = parse_operator(args.expr, cfg, n)
        f = parse_polynomial(args.poly, cfg, n)
        g = weyl_apply(d, f)
        _emit(args, g.to_text(), {"result": g.to_text()}, out)
    elif cmd == "level":
        cfg, n = _config(args)
        r = level_of(parse_operator(args.expr, cfg, n))
        _emit(args, str(r), {"level": r}, out)
    elif cmd == "matrix":
        cfg, n = _config(args)
        M = matrix_of(parse_operator(args.expr, cfg, n), args.level)
        _emit(args, M.to_text(), {
            "level": M.level, "q": M.size,
            "rows": [[e.to_text("y") for e in row] for row in M.entries],
        }, out)
    elif cmd == "present":
        pres = present_ideal(_generators(args), args.side, args.level)
        _emit(args, pres.to_text(), presentation_to_dict(pres), out)
    elif cmd == "oracle":
        ker = truncated_syzygy_oracle(_generators(args), args.bound, args.side)
        tuples = ["(" + ", ".join(u.to_text() for u in t) + ")" for t in ker.basis]
        text = "\n".join([f"bound={ker.bound} dim={len(ker.basis)}"] + tuples)
        _emit(args, text, {
            "bound": ker.bound, "dim": len(ker.basis),
            "basis": [[u.to_text() for u in t] for t in ker.basis],
        }, out)
    elif cmd == "verify":
        cfg, n = _config(args)
        pres = read_presentation(args.file, cfg, n)
        report = verify_presentation(pres)
        lines = [f"syzygy {i}: {'pass' if ok else 'fail'}" for i, ok in enumerate(report.results, 1)]
        lines.append(f"side={report.side} level={report.level} "
                     f"{'ok' if report.ok else 'FAILED'}")
        _emit(args, "\n".join(lines), {
            "side": report.side, "level": report.level,
            "results": report.results, "ok": report.ok,
        }, out)
        return 0 if report.ok else 1
    return 0


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
