"""Command-line entry point: ``verify``, ``eval`` and ``show``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .catalogue import CATALOGUE, UnknownCheckError, run_checks, select
from .evaluate import evaluate_text, named_objects
from .grammar import ExpressionError
from .render import render

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycontact",
        description="Exact verification of the N=1 SUSY polycontact structure on R^{4|4}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run catalogue checks")
    verify.add_argument("ids", nargs="+", help="'all' or check ids: " + ", ".join(CATALOGUE))
    verify.add_argument("--format", choices=("text", "structured"), default="text")
    verify.add_argument("--xdeg", type=int, default=2, help="x-degree bound for ansatz solves (default 2)")

    ev = sub.add_parser("eval", help="evaluate an expression")
    ev.add_argument("expr")
    ev.add_argument("--latex", action="store_true")

    show = sub.add_parser("show", help="print a named object")
    show.add_argument("name")
    show.add_argument("--latex", action="store_true")
    return parser


def _verify(args) -> int:
    if args.xdeg < 0:
        print("error: --xdeg must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        select(args.ids)
    except UnknownCheckError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    status = EXIT_OK
    for report in run_checks(args.ids, args.xdeg):
        if args.format == "structured":
            print(json.dumps(report.to_record()), flush=True)
        else:
            print(report.to_text(), flush=True)
        if not report.passed:
            status = EXIT_FAIL
    return status


def _eval(args) -> int:
    try:
        value = evaluate_text(args.expr)
    except ExpressionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(value, "latex" if args.latex else "plain"))
    return EXIT_OK


def _show(args) -> int:
    objects = named_objects()
    if args.name not in objects:
        print(f"error: unknown object {args.name!r}; known: {', '.join(objects)}", file=sys.stderr)
        return EXIT_USAGE
    print(render(objects[args.name], "latex" if args.latex else "plain", name=args.name))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"verify": _verify, "eval": _eval, "show": _show}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
