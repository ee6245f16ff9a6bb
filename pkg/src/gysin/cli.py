"""Command-line entry point.

Exit codes: 0 success, 2 a verification failed, 64 usage error, 65 bad input data.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from gysin import repro
from gysin.axioms import DEFAULT_SEED
from gysin.errors import InvalidArgument
from gysin.ffield import is_prime
from gysin.rdi import ExprError, eval_expr, format_expr, normalize, parse_expr
from gysin.session import (Session, corr_to_json, format_corr, format_elem, make_functor,
                           parse_group, term_to_json)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _odd_prime(s):
    try:
        p = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if p % 2 == 0 or not is_prime(p):
        raise argparse.ArgumentTypeError(f"P must be an odd prime, got {p}")
    return p


def _positive(s):
    try:
        n = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON document per line")
    common.add_argument("--ascii", action="store_true", help="ASCII-only output")

    ap = _Parser(prog="gysin", description="Gysin functors and correspondence categories")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("gw-table", parents=[common], help="transfer tables over F_p")
    p.add_argument("--p", type=_odd_prime, required=True)
    p.add_argument("--max-degree", type=_positive, required=True)

    p = sub.add_parser("euler", parents=[common], help="Euler characteristics in GW(F_p)")
    p.add_argument("--p", type=_odd_prime, required=True)
    p.add_argument("--max-e", type=_positive, required=True)

    p = sub.add_parser("repro", parents=[common], help="recompute a worked example")
    p.add_argument("example", choices=sorted(repro.REPROS))
    p.add_argument("--p", type=_odd_prime, default=3, help="prime for z8")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    for name in ("eval", "normalize"):
        p = sub.add_parser(name, parents=[common], help=f"{name} a morphism expression")
        p.add_argument("--env", required=True, help="environment JSON file")
        p.add_argument("--expr", required=True)
        p.add_argument("--functor", default=None, help="burnside, gw:P or rc")

    p = sub.add_parser("verify", parents=[common], help="run the property suite")
    p.add_argument("--functor", required=True, help="burnside, gw, gw:P or rc")
    p.add_argument("--group", required=True, help="Z/n, Sn or 1")
    p.add_argument("--p", type=_odd_prime, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--iters", type=_positive, default=100)
    return ap


def _emit_rows(rows, args, out):
    for r in rows:
        if args.json:
            print(json.dumps(r.to_json(ascii=args.ascii), ensure_ascii=args.ascii), file=out)
        else:
            print(r.render(ascii=args.ascii), file=out)
    ok = repro.all_ok(rows)
    if not args.json:
        print(("all checks passed" if ok else "SOME CHECKS FAILED"), file=out)
    return EXIT_OK if ok else EXIT_FAIL


def _asc(s, args):
    return repro._asciify(s) if args.ascii else s


def cmd_expr(args, out, err):
    try:
        session = Session.load(args.env, functor=args.functor)
    except OSError as exc:
        print(f"cannot read environment: {exc}", file=err)
        return EXIT_DATA
    E = session.functor
    env = session.env()
    try:
        e = parse_expr(args.expr, env)
        value = eval_expr(e, E, env)
        nf = normalize(e, E, env) if args.cmd == "normalize" else None
    except ExprError as exc:
        print(exc.render(), file=err)
        return EXIT_DATA
    if args.json:
        doc = {"expr": format_expr(e), "value": corr_to_json(value, session)}
        if nf is not None:
            doc["terms"] = [term_to_json(E, t) for t in nf.terms]
        print(json.dumps(doc, ensure_ascii=args.ascii), file=out)
        return EXIT_OK
    print(_asc(format_corr(value, ascii=args.ascii), args), file=out)
    if nf is not None:
        if not nf.terms:
            print("normal form: 0", file=out)
        for t in nf.terms:
            a = _asc(format_elem(E, t.a, ascii=args.ascii), args)
            print(f"  {t.coeff} * R{list(t.f.table)} D({a}) I{list(t.g.table)}"
                  f"  (span of size {t.span.size})", file=out)
        ok = nf.evaluate(E) == value
        print(f"normal form re-evaluates to the same value: {'OK' if ok else 'FAIL'}", file=out)
        if not ok:
            return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args, out, err):
    try:
        group = parse_group(args.group)
        E = make_functor(args.functor, group, args.p)
    except InvalidArgument as exc:
        raise UsageError(str(exc))
    rows = repro.verify_suite(E, seed=args.seed, iters=args.iters)
    return _emit_rows(rows, args, out)


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.cmd == "gw-table":
            return _emit_rows(repro.gw_table(args.p, args.max_degree), args, out)
        if args.cmd == "euler":
            return _emit_rows(repro.euler_table(args.p, args.max_e), args, out)
        if args.cmd == "repro":
            fn = repro.REPROS[args.example]
            if args.example == "z8":
                rows = fn(args.p)
            elif args.example == "recon-ab":
                rows = fn(seed=args.seed)
            else:
                rows = fn()
            return _emit_rows(rows, args, out)
        if args.cmd in ("eval", "normalize"):
            return cmd_expr(args, out, err)
        if args.cmd == "verify":
            return cmd_verify(args, out, err)
    except UsageError as exc:
        print(f"gysin: error: {exc}", file=err)
        return EXIT_USAGE
    except (InvalidArgument, KeyError, TypeError) as exc:
        print(f"gysin: invalid input: {exc}", file=err)
        return EXIT_DATA
    return EXIT_USAGE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
