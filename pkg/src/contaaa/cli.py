"""Command-line front end: ``aaax``, ``aaaz`` and ``aaai``."""

import argparse
import logging
import sys
import warnings
from pathlib import Path

from . import report
from .domains import Domain
from .engine import AaaOptions, Status, run
from .errors import AAAError
from .funcspec import CATALOG, CatalogEntry, FunctionSpec

EXIT_CODES = {
    Status.CONVERGED: 0,
    Status.MAX_DEGREE: 2,
    Status.BAD_POLE_FALLBACK: 3,
}

COMMANDS = {
    "aaax": "rational approximation on [-1, 1]",
    "aaaz": "rational approximation on the unit circle or disk",
    "aaai": "rational approximation on the imaginary axis or right half-plane",
}


def _add_options(p, command):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--fn", metavar="EXPR", help="target function as an expression in x or z")
    src.add_argument("--catalog", metavar="NAME", choices=sorted(CATALOG),
                     help="named test function: " + ", ".join(sorted(CATALOG)))
    p.add_argument("--degree", type=int, default=150, help="maximum degree (default 150)")
    p.add_argument("--lawson", type=int, default=0, metavar="N", help="AAA-Lawson steps (default 0)")
    p.add_argument("--tol", type=float, default=1e-13, help="relative tolerance (default 1e-13)")
    if command != "aaax":
        p.add_argument("--mero", type=int, choices=(0, 1), default=None,
                       help="allow poles inside the disk / right half-plane")
    p.add_argument("--fine", type=int, default=30, metavar="P", help="fine-grid density (default 30)")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory (default .)")
    p.add_argument("--plot", action="store_true", help="also write convergence.svg and error.svg")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser(command=None):
    if command is not None:
        p = argparse.ArgumentParser(prog=command, description=COMMANDS[command])
        _add_options(p, command)
        p.set_defaults(command=command)
        return p
    p = argparse.ArgumentParser(prog="contaaa", description="Continuum AAA rational approximation")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_text in COMMANDS.items():
        _add_options(sub.add_parser(name, help=help_text, description=help_text), name)
    return p


def _domain(command, mero):
    if command == "aaax":
        return Domain.interval()
    if command == "aaaz":
        return Domain.circle(mero)
    return Domain.imaginary_axis(mero)


def execute(args):
    entry = CATALOG.get(args.catalog) if args.catalog else None
    f = entry.spec() if entry else FunctionSpec(args.fn)
    mero = getattr(args, "mero", None)
    if mero is None:
        mero = entry.mero if isinstance(entry, CatalogEntry) else False
    domain = _domain(args.command, bool(mero))
    opts = AaaOptions(tol=args.tol, max_degree=args.degree, lawson_steps=args.lawson,
                      fine_grid_density=args.fine)
    result = run(f, domain, opts)

    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    report.emit_model(result, out / report.MODEL_FILE, function=f.text)
    report.emit_history(result, out / report.HISTORY_FILE)
    report.emit_error_curve(result, out / report.CURVE_FILE)
    if args.plot:
        report.emit_plots(result, out)
    return result


def main(argv=None, command=None):
    parser = build_parser(command)
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            result = execute(args)
    except (AAAError, OSError, ValueError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1
    print(f"{result.status.value}: degree {result.degree}, fine-grid error {result.fine_error:.3e}, "
          f"{result.feval_count} function evaluations")
    if result.winding_number is not None and result.lawson is not None:
        print(f"winding number of error curve: {result.winding_number}")
    return EXIT_CODES[result.status]


def aaax():
    sys.exit(main(command="aaax"))


def aaaz():
    sys.exit(main(command="aaaz"))


def aaai():
    sys.exit(main(command="aaai"))
