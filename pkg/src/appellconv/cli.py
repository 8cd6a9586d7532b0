"""Command-line front end: ``table``, ``verify`` and ``selftest``.

Exit codes: 0 everything verified, 1 an identity failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys
from typing import Optional, Sequence

from . import acceptance
from .appell import appell_from_rv, appell_poly
from .errors import AppellError, ConsistencyError
from .exact import format_rational, parse_rational, parse_rational_list
from .moments import BernoulliP, CauchySigned, Uniform01, parse_rv
from .reports import FORMATS, ReportWriter
from .stirling import ONE, corrupted_stirling_table, stirling_rows
from .sweeps import DEFAULT_SEED, IDENTITIES, SweepSpec, parse_slots, run_sweep

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2

TABLE_KINDS = {
    "bernoulli": Uniform01(),
    "euler": BernoulliP(parse_rational("1/2")),
    "cauchy": CauchySigned(),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _rationals(text: str):
    try:
        return parse_rational_list(text)
    except AppellError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational(text: str):
    try:
        return parse_rational(text)
    except AppellError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="appellconv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    table = sub.add_parser("table", help="print an exact table")
    table.add_argument("kind", choices=["bernoulli", "euler", "cauchy", "stirling", "stirling-y"])
    table.add_argument("--n", type=int, required=True, help="maximal degree")
    table.add_argument("--rv", default=None, help="catalog variable for stirling-y (or base numbers)")
    table.add_argument("--r", type=int, default=None, help="restrict stirling tables to one r")
    table.add_argument("--x", type=_rational, default=None, help="evaluation point for stirling-y")
    table.add_argument("--poly", action="store_true", help="print coefficients of A_n(x) instead")
    table.add_argument("--out", default=None)

    verify = sub.add_parser("verify", help="run an identity sweep and emit reports")
    verify.add_argument("identity", choices=sorted(IDENTITIES))
    verify.add_argument("--m", type=_int_list, default=(2,), help="arity, or comma list of arities")
    verify.add_argument("--n-max", type=int, required=True)
    verify.add_argument("--slots", default=None, help="comma list of catalog names, one per slot")
    verify.add_argument("--w", type=_rationals, default=None, help="deterministic weights")
    verify.add_argument("--alpha", type=_rationals, default=None, help="Dirichlet parameters")
    verify.add_argument("--t", type=_rationals, default=None, help="Chu-Vandermonde parameters")
    verify.add_argument("--x", type=_rationals, default=None,
                        help="x values: one per slot, or a pool for common-x identities")
    verify.add_argument("--rv", default=None, help="catalog variables for theorem1")
    verify.add_argument("--oracle", default=None,
                        help="deterministic:w1,..  dirichlet:a1,..  iid:<catalog name>")
    verify.add_argument("--samples", type=int, default=5, help="seeded draws per degree")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--format", choices=FORMATS, default="csv")
    verify.add_argument("--out", default=None)
    verify.add_argument("--no-timing", action="store_true", help="write micros=0 for byte-stable output")

    selftest = sub.add_parser("selftest", help="run the acceptance battery")
    selftest.add_argument("--quick", action="store_true", help="smaller sizes")
    selftest.add_argument("--inject-fault", action="store_true",
                          help="corrupt the classical Stirling table (negative control)")
    return parser


@contextlib.contextmanager
def _output(path: Optional[str], stdout):
    if path is None:
        yield stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def cmd_table(args, stdout) -> int:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    if args.kind in TABLE_KINDS:
        rv = parse_rv(args.rv) if args.rv else TABLE_KINDS[args.kind]
        A = appell_from_rv(rv, args.n, method="inverse")
        with _output(args.out, stdout) as out:
            if args.poly:
                for j, c in enumerate(appell_poly(A, args.n).coefficients):
                    out.write(f"{j} {format_rational(c)}\n")
            else:
                out.write(A.base.to_text())
        return EXIT_OK
    if args.kind == "stirling":
        rv, x = ONE, 0
    else:
        if not args.rv:
            raise UsageError("stirling-y needs --rv")
        rv, x = parse_rv(args.rv), args.x or 0
    if args.r is not None and not 0 <= args.r <= args.n:
        raise UsageError(f"--r must lie in 0..{args.n}")
    rows = stirling_rows(rv, args.n, x, args.r)
    if args.kind == "stirling-y" and args.r is not None:
        rows = [row for row in rows if row.startswith(f"{args.n} ")]
    with _output(args.out, stdout) as out:
        for row in rows:
            out.write(row + "\n")
    return EXIT_OK


def cmd_verify(args, stdout) -> int:
    spec = SweepSpec(
        identity=args.identity,
        n_max=args.n_max,
        ms=args.m,
        slots=parse_slots(args.slots) if args.slots else None,
        weights=args.w,
        alpha=args.alpha,
        t=args.t,
        xs=args.x,
        rvs=parse_slots(args.rv) if args.rv else None,
        oracle=args.oracle,
        seed=args.seed,
        samples=args.samples,
    )
    with _output(args.out, stdout) as out:
        writer = ReportWriter(out, args.format, timing=not args.no_timing)
        for report in run_sweep(spec):
            writer.write(report)
            if not report.equal:
                return EXIT_FAILURE
    return EXIT_OK


def cmd_selftest(args, stdout) -> int:
    ctx = corrupted_stirling_table() if args.inject_fault else contextlib.nullcontext()
    with ctx:
        summary = acceptance.run_all(quick=args.quick, stream=stdout)
    return EXIT_OK if summary.passed else EXIT_FAILURE


COMMANDS = {"table": cmd_table, "verify": cmd_verify, "selftest": cmd_selftest}


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, stdout)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=stderr)
        return EXIT_FAILURE
    except AppellError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
