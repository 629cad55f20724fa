"""
Command-line entry point.

    python -m tpsbench.app.cli VERB [options]

Exit codes: 0 when every checked property holds (or a solve completed),
1 when a checked property is violated (the report carries witnesses),
2 for usage, parse and I/O errors (diagnostic on stderr, no report).
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from tpsbench.app.core.config import settings
from tpsbench.app.core.exceptions import AppException, UsageError
from tpsbench.app.core.observability import configure_logging
from tpsbench.app.domain.algebra.basis import Window
from tpsbench.app.domain.dsl.render import render
from tpsbench.app.domain.exactnum import parse_scalar
from tpsbench.app.services import workbench
from tpsbench.app.services.algebra_loader import LoadedAlgebra, catalog_listing, load_algebra
from tpsbench.app.services.reports import build_report, write_report

logger = logging.getLogger("tpsbench.cli")

__all__ = ["build_parser", "main", "parse_scalar", "run"]

VERBS = (
    "alg-list",
    "alg-show",
    "alg-parse",
    "bracket",
    "jacobi",
    "halfder-check",
    "halfder-solve",
    "halfder-family",
    "tps-check",
    "tps-solve",
    "mutation",
)
WINDOW_VERBS = {"jacobi", "halfder-check", "halfder-solve", "tps-check", "tps-solve"}


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="tpsbench", description="Exact workbench for Witt-type algebras")
    parser.add_argument("verb", choices=VERBS)
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--alg", help="catalog algebra name")
    source.add_argument("--file", help="path of a .liealg source")
    parser.add_argument("--a")
    parser.add_argument("--b")
    parser.add_argument("--n")
    parser.add_argument("--gen", action="append", default=[], help="group generator (repeatable or comma separated)")
    parser.add_argument("--imin", type=int)
    parser.add_argument("--imax", type=int)
    parser.add_argument("--gen-bound", type=int, default=0, help="group coordinate bound")
    parser.add_argument("--out-pad", type=int, default=0, help="extra index slack for the output window")
    parser.add_argument("--shift", action="append", default=[], help="grade shift (repeatable)")
    parser.add_argument("--shift-bound", type=int, default=1, help="index shift bound of tps-solve generators")
    parser.add_argument("--seed", action="append", default=[], help="family seed NAME:KEY=VALUE (repeatable)")
    parser.add_argument("--product", default="plain-W", choices=workbench.PRODUCT_CHOICES)
    parser.add_argument("--w", help="mutation element")
    parser.add_argument("--x", help="left element")
    parser.add_argument("--y", help="right element")
    parser.add_argument("--out", help="report path (default stdout)")
    parser.add_argument("--log-level", default=None)
    return parser


def _params(args: argparse.Namespace) -> Dict[str, Any]:
    params: Dict[str, Any] = {"a": args.a, "b": args.b, "n": args.n}
    gens: List[str] = [g.strip() for text in args.gen for g in text.split(",") if g.strip()]
    if gens:
        params["generators"] = gens
    return {k: v for k, v in params.items() if v is not None}


def _window(args: argparse.Namespace, required: bool) -> Optional[Window]:
    if args.imin is None or args.imax is None:
        if required:
            raise UsageError(f"{args.verb} needs --imin and --imax")
        return None
    return Window(args.imin, args.imax, args.gen_bound)


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.verb} needs {', '.join(missing)}")


def _load(args: argparse.Namespace) -> LoadedAlgebra:
    if args.alg is None and args.file is None:
        raise UsageError(f"{args.verb} needs --alg or --file")
    return load_algebra(name=args.alg, params=_params(args), file=args.file)


def _dispatch(args: argparse.Namespace):
    verb = args.verb
    if verb == "alg-list":
        return build_report(verb, {"algebras": catalog_listing()})

    loaded = _load(args)
    alg = loaded.algebra
    window = _window(args, verb in WINDOW_VERBS)
    inputs: Dict[str, Any] = {}

    if verb in ("alg-show", "alg-parse"):
        result, passed = {"description": alg.describe(), "source": render(alg, loaded.declared_product)}, True
    elif verb == "bracket":
        _require(args, "x", "y")
        inputs = {"x": args.x, "y": args.y}
        result, passed = workbench.run_bracket(alg, args.x, args.y)
    elif verb == "jacobi":
        result, passed = workbench.run_jacobi(alg, window)
    elif verb in ("halfder-check", "halfder-family"):
        seeds = workbench.collect_seeds(args.seed)
        inputs = {"seeds": sorted(args.seed)}
        if verb == "halfder-check":
            result, passed = workbench.run_halfder_check(alg, seeds, window)
        else:
            result, passed = workbench.run_halfder_family(alg, seeds, window)
    elif verb == "halfder-solve":
        shifts = args.shift or ["0"]
        inputs = {"shifts": shifts, "out_pad": args.out_pad}
        result, passed = workbench.run_halfder_solve(alg, shifts, window, args.out_pad)
    elif verb == "tps-check":
        product = workbench.select_product(alg, args.product, args.w, loaded.declared_product)
        inputs = {"product": args.product, "w": args.w}
        result, passed = workbench.run_tps_check(alg, product, window)
    elif verb == "tps-solve":
        inputs = {"shift_bound": args.shift_bound}
        result, passed = workbench.run_tps_solve(alg, window, args.shift_bound)
    else:
        _require(args, "w", "x", "y")
        inputs = {"w": args.w, "x": args.x, "y": args.y}
        result, passed = workbench.run_mutation(alg, args.w, args.x, args.y, loaded.declared_product)

    return build_report(verb, result, passed, loaded.identity, window, inputs)


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """Run one command and return its exit code."""
    stdout = stdout or sys.stdout.buffer
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
        configure_logging(args.log_level)
        doc = _dispatch(args)
        write_report(doc, args.out, stdout)
    except AppException as exc:
        logger.debug("Command failed", extra={"error_code": exc.error_code, "details": exc.details})
        print(f"{exc.error_code}: {exc.message}", file=stderr)
        return 2
    logger.info("Command finished", extra={"verb": doc.verb, "passed": doc.passed, "version": settings.tool_version})
    return 0 if doc.passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
