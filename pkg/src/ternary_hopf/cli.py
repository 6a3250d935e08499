"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 bad usage or unparsable input.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import dual as D
from . import hopf as H
from .enveloping import engine
from .exterior import roby_basis, roby_dim
from .structure import AlgebraSpec, check_representation, get_builtin, builtin_matrix_rep, validate
from .textio import (
    ParseError,
    machine_lines,
    parse_algebra,
    parse_dual,
    parse_element,
    render_dual,
    render_dual_tensor,
    render_element,
    render_tensor,
)

DEFAULT_ALGEBRA = "builtin:iso3_1_3"


class UsageError(Exception):
    pass


def load_spec(ref: str) -> AlgebraSpec:
    if ref.startswith("builtin:"):
        name = ref[len("builtin:"):]
        try:
            return get_builtin(name)
        except KeyError as e:
            raise UsageError(e.args[0]) from None
    try:
        return parse_algebra(ref)
    except OSError as e:
        raise UsageError(f"cannot read {ref}: {e.strerror}") from None


def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--algebra", default=d(DEFAULT_ALGEBRA), help="path to a JSON algebra file or builtin:NAME")
    p.add_argument("--cutoff", type=int, default=d(4), help="degree cutoff for dual computations")
    p.add_argument("--degree", type=int, default=d(3), help="degree bound for checks and pbw-dim")
    p.add_argument("--format", choices=("text", "machine"), default=d("text"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ternary-hopf",
        description="Enveloping algebras of Lie algebras of order three: normal forms, Hopf structure, duals.",
    )
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def cmd(name, help, *args):
        p = sub.add_parser(name, help=help)
        _global_flags(p, suppress=True)
        for a in args:
            p.add_argument(a)
        return p

    cmd("validate", "check the axioms of the algebra")
    cmd("normalize", "PBW normal form of an expression", "expr")
    cmd("mul", "product of two expressions", "left", "right")
    cmd("coprod", "coproduct of an expression", "expr")
    cmd("counit", "counit of an expression", "expr")
    cmd("antipode", "antipode of an expression", "expr")
    hc = cmd("hopf-check", "run the Hopf axioms on the PBW basis up to --degree")
    hc.add_argument("--pairs", type=int, default=200, help="random pairs for multiplicativity")
    hc.add_argument("--seed", type=int, default=0)
    dm = cmd("dual-mul", "product of dual elements, exact up to --cutoff", "left", "right")
    dm.add_argument("more", nargs="*", help="further factors, multiplied left to right")
    cmd("dual-coprod", "coproduct of a dual element, exact up to --cutoff", "expr")
    cmd("dual-antipode", "antipode of a dual element, exact up to --cutoff", "expr")
    cmd("dual-check", "symmetrised theta triples vanish and alphas commute")
    for name, help in (("roby-dim", "number of rise-free words"), ("roby-basis", "list the rise-free words")):
        p = cmd(name, help)
        p.add_argument("d", type=int, help="alphabet size")
        p.add_argument("n", type=int, help="forbidden rise length")
        p.add_argument("k", type=int, help="word length")
    cmd("pbw-dim", "PBW basis sizes per degree up to --degree")
    return parser


def _emit(obj, spec, fmt, text_renderer) -> str:
    if fmt == "machine":
        return "\n".join(machine_lines(obj, spec))
    return text_renderer(obj, spec)


def _report(report, fmt) -> str:
    if fmt == "machine":
        lines = []
        for c in report.checks:
            lines.append("\t".join([c.name, "PASS" if c.passed else "FAIL", c.detail]))
        return "\n".join(lines)
    return str(report)


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        text, code = _dispatch(args)
    except (ParseError, UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if text:
        print(text, file=out)
    return code


def _dispatch(args):
    c = args.command
    fmt = args.format
    if c == "roby-dim":
        return str(roby_dim(args.d, args.n, args.k)), 0
    if c == "roby-basis":
        words = roby_basis(args.d, args.n, args.k)
        if fmt == "machine":
            return "\n".join(" ".join(map(str, w)) for w in words), 0
        return "\n".join("(" + ",".join(map(str, w)) + ")" for w in words), 0

    spec = load_spec(args.algebra)
    if c == "validate":
        report = validate(spec)
        if args.algebra.startswith("builtin:matrix_"):
            dims = tuple(int(x) for x in args.algebra.split("_")[1:])
            _, rep = builtin_matrix_rep(*dims)
            report.checks.extend(check_representation(spec, rep).checks)
        return _report(report, fmt), 0 if report.ok else 1
    if c == "pbw-dim":
        U = engine(spec)
        counts = [len(U.pbw_basis_exact(k)) for k in range(args.degree + 1)]
        if fmt == "machine":
            return "\n".join(f"{k}\t{n}" for k, n in enumerate(counts)), 0
        lines = [f"degree {k}: {n}" for k, n in enumerate(counts)]
        lines.append(f"total up to degree {args.degree}: {sum(counts)}")
        return "\n".join(lines), 0
    if c in ("normalize", "coprod", "counit", "antipode"):
        u = parse_element(args.expr, spec)
        if c == "normalize":
            return _emit(u, spec, fmt, render_element), 0
        if c == "coprod":
            return _emit(H.coproduct(u, spec), spec, fmt, render_tensor), 0
        if c == "counit":
            return H.counit(u, spec).render(), 0
        return _emit(H.antipode(u, spec), spec, fmt, render_element), 0
    if c == "mul":
        u = engine(spec).mul(parse_element(args.left, spec), parse_element(args.right, spec))
        return _emit(u, spec, fmt, render_element), 0
    if c == "hopf-check":
        report = H.hopf_check(spec, args.degree, args.pairs, args.seed)
        return _report(report, fmt), 0 if report.ok else 1
    if c == "dual-mul":
        factors = [parse_dual(t, spec) for t in [args.left, args.right] + list(args.more)]
        f = D.dual_mul_many(factors, spec, args.cutoff)
        return _emit(f, spec, fmt, render_dual), 0
    if c == "dual-coprod":
        t = D.dual_coproduct(parse_dual(args.expr, spec), spec, args.cutoff)
        return _emit(t, spec, fmt, render_dual_tensor), 0
    if c == "dual-antipode":
        f = D.dual_antipode(parse_dual(args.expr, spec), spec, args.cutoff)
        return _emit(f, spec, fmt, render_dual), 0
    if c == "dual-check":
        report = D.three_exterior_check(spec, args.cutoff)
        return _report(report, fmt), 0 if report.ok else 1
    raise UsageError(f"unknown command {c}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
