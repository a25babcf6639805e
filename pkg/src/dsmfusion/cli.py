"""Command line interface.

    dsmfusion fuse config.json [--display N] [--format json|text]
    dsmfusion generate --n 3 [--constraints 1n3 ...] [--limit K]
    dsmfusion hist --n 5 [--constraints 1n2] [--csv]
    dsmfusion decode --n 3 --constraints 1n3 --code "2"

Exit status: 0 on success, 1 on a domain error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import islice
from typing import Optional, Sequence

from . import hyperpowerset
from .codification import check_code, make_frame, parse_code, smarandache_string
from .errors import DSmError
from .fuse import load_config, render_text, report_json, run_fuse


def _frame(args):
    return make_frame(args.n, args.constraints or None)


def cmd_fuse(args) -> str:
    config = load_config(args.config)
    if args.display is not None:
        config.display = args.display
    report = run_fuse(config)
    if args.format == "json":
        return report_json(report)
    return render_text(report)


def cmd_generate(args) -> str:
    frame = _frame(args)
    stream = hyperpowerset.generate_dthetar(frame)
    if args.limit is not None:
        stream = islice(stream, args.limit)
    entries = list(stream)
    if args.format == "json":
        rows = [{"code": list(e.code.parts), "smarandache": e.smarandache, "expression": e.expression} for e in entries]
        return json.dumps(rows, indent=2) + "\n"
    return "".join(f"{e.code} | {e.smarandache} | {e.expression}\n" for e in entries)


def cmd_hist(args) -> str:
    hist = hyperpowerset.cardinality_histogram(_frame(args))
    if args.format == "json" and not args.csv:
        return json.dumps({"n": args.n, "histogram": {str(k): v for k, v in hist.items()}}, indent=2) + "\n"
    return hyperpowerset.histogram_csv(hist)


def cmd_decode(args) -> str:
    frame = _frame(args)
    code = parse_code(args.code)
    check_code(code, frame)
    expression = hyperpowerset.decode_many([code], frame)[0]
    smarandache = smarandache_string(code, frame)
    if args.format == "json":
        row = {"code": list(code.parts), "expression": expression, "smarandache": smarandache}
        return json.dumps(row, indent=2) + "\n"
    if expression is None:
        return f"{smarandache}\n"
    return f"{expression}\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    framed = argparse.ArgumentParser(add_help=False)
    framed.add_argument("--n", type=int, required=True, help="number of singletons")
    framed.add_argument(
        "--constraints", nargs="*", default=[], metavar="EXPR",
        help="elements declared empty, e.g. 1n3 2n3, or 2T for all pairwise intersections",
    )

    parser = argparse.ArgumentParser(prog="dsmfusion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fuse", parents=[common], help="run the fusion pipeline on a JSON config")
    p.add_argument("config")
    p.add_argument("--display", type=int, choices=range(5), help="override the config display mode")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("generate", parents=[common, framed], help="stream the reduced hyper power set")
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("hist", parents=[common, framed], help="DSm cardinality histogram")
    p.add_argument("--csv", action="store_true", help="CSV output (default for text format)")
    p.set_defaults(func=cmd_hist)

    p = sub.add_parser("decode", parents=[common, framed], help="decode a code into an expression")
    p.add_argument("--code", required=True, help='part numbers, e.g. "1,3"')
    p.set_defaults(func=cmd_decode)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except (DSmError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
