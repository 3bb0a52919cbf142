"""Command-line front end.

Subcommands: a (single density evaluation), sweep (CSV over a k range),
accessory (solver internals for one aspect), max (normalized-density peak),
verify (self-check suite). Exit codes: 0 success, 1 argument or I/O errors,
2 numerical failures inside the solver.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import accessory, verify
from .accessory import NearSingularQuotient, NoSignChange, OutsideBracket
from .lame_solver import BracketNotFound, StepSizeUnderflow
from .lattice import TooCloseToPole
from .special_functions import ArgumentOutOfStrip

__all__ = ["main"]

# Numerical breakdowns exit with 2; plain bad arguments with 1. Listed
# before ValueError in the handler because OutsideBracket and the strip
# and pole guards are ValueError subclasses.
_NUMERICAL_ERRORS = (
    NoSignChange,
    BracketNotFound,
    StepSizeUnderflow,
    OutsideBracket,
    NearSingularQuotient,
    TooCloseToPole,
    ArgumentOutOfStrip,
)

_CSV_HEADER = "k,two_omega,a_native,a_normalized,a_normalized_x2"


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 on usage errors, keeping stdout clean."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="hyplattice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_a = sub.add_parser("a", help="evaluate the native density a(k)")
    p_a.add_argument("--k", type=float, required=True, help="aspect ratio")
    p_a.add_argument("--tol", type=float, default=1e-10)
    p_a.add_argument("--json", action="store_true", dest="as_json")
    p_a.set_defaults(func=cmd_a)

    p_sweep = sub.add_parser("sweep", help="CSV sweep over a geometric k grid")
    p_sweep.add_argument("--k-min", type=float, default=0.1)
    p_sweep.add_argument("--k-max", type=float, default=10.0)
    p_sweep.add_argument("--points", type=int, default=41)
    p_sweep.add_argument("--tol", type=float, default=1e-10)
    p_sweep.add_argument("--out", default=None, help="output path (default stdout)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_acc = sub.add_parser("accessory", help="bounds, root and tangency data")
    p_acc.add_argument("--k", type=float, required=True)
    p_acc.add_argument("--tol", type=float, default=1e-10)
    p_acc.set_defaults(func=cmd_accessory)

    p_max = sub.add_parser("max", help="locate the normalized-density peak")
    p_max.add_argument("--tol", type=float, default=1e-8)
    p_max.set_defaults(func=cmd_max)

    p_verify = sub.add_parser("verify", help="run the self-check suite")
    p_verify.add_argument("--fast", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def cmd_a(ns) -> int:
    res = accessory.solve_for_aspect(ns.k, ns.tol)
    if ns.as_json:
        print(
            json.dumps(
                {
                    "k": ns.k,
                    "a": res.tangency.a,
                    "lambda_star": res.lambda_star,
                    "residual": res.residual,
                }
            )
        )
    else:
        print(f"k={ns.k:.12g}")
        print(f"a={res.tangency.a:.12g}")
        print(f"lambda_star={res.lambda_star:.12g}")
        print(f"residual={res.residual:.12g}")
    return 0


def cmd_sweep(ns) -> int:
    rows = accessory.sweep_rows(ns.k_min, ns.k_max, ns.points, ns.tol)
    lines = [_CSV_HEADER]
    for row in rows:
        lines.append(
            f"{row.k:.12g},{row.two_omega:.12g},{row.a_native:.12g},"
            f"{row.a_normalized:.12g},{row.a_normalized_x2:.12g}"
        )
    text = "\n".join(lines) + "\n"
    if ns.out is None:
        sys.stdout.write(text)
    else:
        with open(ns.out, "w", encoding="ascii", newline="\n") as handle:
            handle.write(text)
    return 0


def cmd_accessory(ns) -> int:
    res = accessory.solve_for_aspect(ns.k, ns.tol)
    td = res.tangency
    print(f"lambda_minus={res.bracket.lambda_minus:.12g}")
    print(f"lambda_plus={res.bracket.lambda_plus:.12g}")
    print(f"lambda_star={res.lambda_star:.12g}")
    print(f"m={td.m:.12g}")
    print(f"r={td.r:.12g}")
    print(f"m1={td.m1:.12g}")
    print(f"r1={td.r1:.12g}")
    print(f"e={td.e:.12g}")
    print(f"a={td.a:.12g}")
    return 0


def cmd_max(ns) -> int:
    k_star, value = accessory.find_normalized_max(ns.tol)
    print(f"k_star={k_star:.12g}")
    print(f"two_omega={accessory.two_omega(k_star):.12g}")
    print(f"a_normalized={value:.12g}")
    print(f"a_normalized_x2={2.0 * value:.12g}")
    print(
        "# a_normalized_x2 = 2*a_normalized; both conventions circulate, "
        "so both peaks (0.83465 and 1.6693) can be read off directly."
    )
    return 0


def cmd_verify(ns) -> int:
    outcomes = verify.run_all(fast=ns.fast)
    for oc in outcomes:
        status = "PASS" if oc.ok else "FAIL"
        print(f"{status} {oc.name} ({oc.seconds:.2f}s) {oc.detail}")
    return 0 if all(oc.ok for oc in outcomes) else 1


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0)
    try:
        return ns.func(ns)
    except _NUMERICAL_ERRORS as ex:
        print(f"hyplattice: numerical failure: {ex}", file=sys.stderr)
        return 2
    except ValueError as ex:
        print(f"hyplattice: error: {ex}", file=sys.stderr)
        return 1
    except OSError as ex:
        print(f"hyplattice: error: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
