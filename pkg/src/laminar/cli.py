"""Command-line front end.

    laminar eval --stream S --windows W --query Q [--at T | --all]
    laminar window --stream S --windows W --index I --at T

Answers go to stdout as JSON, one document per evaluation; diagnostics go
to stderr. Exit status is 0 on success, 1 on evaluation errors and 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from .engine import GROUNDINGS, Structure, answer, evaluate_continuous
from .errors import EvaluationError, InputError
from .io import format_stream, parse_query_text, parse_registry, parse_stream_file, serialize_answer
from .logic import Query, TimeVar, window_indices
from .windows import TupleMode, WindowRegistry

MODE_ENV = "LAMINAR_MODE"


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _default_mode(args) -> TupleMode:
    value = args.mode or os.environ.get(MODE_ENV) or TupleMode.EXACT.value
    try:
        return TupleMode(value)
    except ValueError:
        raise UsageError(f"unknown tuple window mode {value!r}") from None


def _structure(args, needed: set[int]) -> Structure:
    stream = parse_stream_file(_read(args.stream))
    if args.windows:
        registry = parse_registry(_read(args.windows), _default_mode(args))
    elif needed:
        raise UsageError("--windows is required when the query uses window operators")
    else:
        registry = WindowRegistry()
    return Structure(stream, registry)


def _cmd_eval(args, out) -> None:
    text = args.query
    # "@ U ..." is also valid query syntax, so only an existing path is read
    if text.startswith("@") and os.path.isfile(text[1:]):
        text = _read(text[1:])
    placeholder = TimeVar("_") if (args.at is not None or args.all) else None
    q = parse_query_text(text.strip(), default_at=placeholder)
    m = _structure(args, window_indices(q))
    opts = {"grounding": args.grounding, "allow_unsafe": args.allow_unsafe}
    if args.all:
        if isinstance(q.at, TimeVar) and q.at != placeholder:
            results = evaluate_continuous(m, q, **opts)
        else:
            results = [(t, answer(m, Query(q.formula, t), **opts)) for t in m.timeline]
        for t, a in results:
            print(serialize_answer(a, {"t": t}), file=out)
        return
    if args.at is not None:
        q = Query(q.formula, args.at)
    print(serialize_answer(answer(m, q, **opts)), file=out)


def _cmd_window(args, out) -> None:
    m = _structure(args, {args.index})
    s = m.urstream
    out.write(format_stream(m.registry[args.index](s, s, args.at)))


def _nat(text: str) -> int:
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="laminar", description="Evaluate window-based queries over streams.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--stream", required=True, help="stream file")
        p.add_argument("--windows", help="JSON window registry")
        p.add_argument(
            "--mode",
            choices=[m.value for m in TupleMode],
            help=f"default tuple window mode (env {MODE_ENV}; default exact-ordered)",
        )

    ev = sub.add_parser("eval", help="answer a query")
    common(ev)
    ev.add_argument("--query", required=True, help="query text, or @path naming an existing file that holds it")
    when = ev.add_mutually_exclusive_group()
    when.add_argument("--at", type=_nat, help="override the query time")
    when.add_argument("--all", action="store_true", help="answer at every time point of the timeline")
    ev.add_argument("--grounding", choices=GROUNDINGS, default="active")
    ev.add_argument("--allow-unsafe", action="store_true", help="answer unsafe queries over the active domain")
    ev.set_defaults(func=_cmd_eval)

    win = sub.add_parser("window", help="print the window selected by win <index> on the stream")
    common(win)
    win.add_argument("--index", type=_nat, required=True)
    win.add_argument("--at", type=_nat, required=True)
    win.set_defaults(func=_cmd_window)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except (UsageError, InputError) as exc:
        print(f"laminar: error: {exc}", file=err)
        return 2
    except EvaluationError as exc:
        print(f"laminar: evaluation failed: {exc}", file=err)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
