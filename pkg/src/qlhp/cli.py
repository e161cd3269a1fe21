"""Command-line entry point.

Exit codes: 0 on success (for ``check``: the verdict is the expected one),
1 on usage errors, 2 when ``check`` produces an unexpected verdict.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import checker
from .expr import ExpressionError, parse_class, parse_relations
from .moduli_models import EXAMPLES, UnknownExampleError
from .orbifold_geometry import (
    LineBundleOnWPS,
    WeightedProjectiveStack,
    is_convex,
    is_pullback_from_coarse,
    satisfies_star,
    vdim_degree_zero,
)

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _weights(text: str) -> WeightedProjectiveStack:
    try:
        return WeightedProjectiveStack(tuple(int(w) for w in text.split(",")))
    except ValueError as e:
        raise UsageError(f"bad weights {text!r}: {e}") from None


def _markings(space: WeightedProjectiveStack, text: str):
    """``mu2:4`` or ``mu2:2,mu3:3``: N points in the sector exp(2 pi i / M)."""
    markings = []
    for item in filter(None, text.split(",")):
        m = re.fullmatch(r"\s*mu(\d+):(\d+)\s*", item)
        if not m or int(m[1]) < 1:
            raise UsageError(f"bad marking spec {item!r}; expected e.g. mu2:4")
        order, count = int(m[1]), int(m[2])
        if count == 0:
            continue
        try:
            sector = space.sector(Fraction(1, order) if order > 1 else 0)
        except ValueError as e:
            raise UsageError(str(e)) from None
        markings.extend([sector] * count)
    return markings


def _print_report(report: checker.CheckReport, fmt: str, out):
    if fmt == "json":
        json.dump(report.to_json(), out, indent=2)
        out.write("\n")
        return
    verdict = report.verdict
    if report.witness is not None:
        verdict += f", witness e = {report.witness}"
    lines = [
        f"example: {report.example}",
        f"ring: {report.ring}",
        f"vdim X: {report.vdim_x}",
        f"vdim Y: {report.vdim_y}",
        f"[X]^vir: {report.class_x_vir}",
        f"iota_*[Y]^vir: {report.pushforward_y_vir}",
        f"positive: {str(report.star_satisfied).lower()}",
        f"convex: {str(report.convex).lower()}",
        f"verdict: {verdict}",
        f"note: {report.obstruction_note}",
    ]
    out.write("\n".join(lines) + "\n")


def cmd_check(args, out) -> int:
    try:
        report = checker.check(args.example)
    except UnknownExampleError as e:
        raise UsageError(e.args[0]) from None
    _print_report(report, args.format, out)
    return EXIT_OK if report.verdict == EXAMPLES[args.example].expected_verdict else EXIT_MISMATCH


def cmd_list(args, out) -> int:
    width = max(map(len, EXAMPLES))
    for ex in EXAMPLES.values():
        out.write(f"{ex.name:<{width}}  {ex.summary}\n")
    return EXIT_OK


def cmd_vdim(args, out) -> int:
    space = _weights(args.weights)
    markings = _markings(space, args.markings)
    try:
        v = vdim_degree_zero(space, args.genus, markings)
    except ValueError as e:
        raise UsageError(str(e)) from None
    out.write(f"{v}\n")
    return EXIT_OK


def cmd_convexity(args, out) -> int:
    L = LineBundleOnWPS(_weights(args.weights), args.degree)
    star = satisfies_star(L)
    convex = str(is_convex(L)).lower() if star else "undefined"
    out.write(f"star:{str(star).lower()} pullback:{str(is_pullback_from_coarse(L)).lower()} "
              f"convex:{convex}\n")
    return EXIT_OK


def cmd_ring_eval(args, out) -> int:
    try:
        ring = parse_relations(args.relations)
        value = parse_class(ring, args.expr)
    except (ExpressionError, ValueError) as e:
        raise UsageError(str(e)) from None
    out.write(f"{value}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qlhp", description="Quantum Lefschetz checks for orbifold hypersurfaces")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="run a named example")
    p.add_argument("example")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("list", help="list the named examples")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("vdim", help="virtual dimension of degree-zero maps")
    p.add_argument("--weights", required=True)
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--markings", default="")
    p.set_defaults(func=cmd_vdim)

    p = sub.add_parser("convexity", help="positivity and convexity of O(k)")
    p.add_argument("--weights", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_convexity)

    p = sub.add_parser("ring-eval", help="evaluate an expression in a truncated ring")
    p.add_argument("--relations", required=True, help='e.g. "h^4,psi^2"')
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_ring_eval)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
