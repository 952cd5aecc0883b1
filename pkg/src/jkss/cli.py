"""Command-line front end.

Exit status: 0 on success, 1 on usage or parse errors, 2 when a diagram
parses but is invalid or unsuitable for the requested computation.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor

from .checks import run_all
from .covering import double_cover
from .diagram import (
    DiagramError,
    DiagramSyntaxError,
    TwistedDiagram,
    parse_diagram,
    random_diagram,
    render_diagram,
)
from .invariant import jkss, twisted_jkss
from .laurent import render_poly
from .moves import random_walk

EXIT_USAGE = 1
EXIT_INVALID = 2


class CliError(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(name: str) -> str:
    if name == "-":
        return sys.stdin.read()
    try:
        with open(name, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"{name}: {exc.strerror}", EXIT_USAGE) from exc


def _load(name: str) -> TwistedDiagram:
    text = _read(name)
    try:
        return parse_diagram(text)
    except DiagramSyntaxError as exc:
        raise CliError(f"{name}: {exc}", EXIT_USAGE) from exc
    except DiagramError as exc:
        raise CliError(f"{name}: {exc}", EXIT_INVALID) from exc


def _value(d: TwistedDiagram, virtual: bool, raw: bool) -> str:
    try:
        value = jkss(d) if virtual else twisted_jkss(d)
    except DiagramError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    return render_poly(value.raw if raw else value.canonical)


def _compute_job(args: tuple[TwistedDiagram, bool, bool]) -> tuple[str | None, str | None, int]:
    try:
        return _value(*args), None, 0
    except CliError as exc:
        return None, str(exc), exc.status


def cmd_compute(ns) -> int:
    diagrams = [_load(name) for name in ns.files]
    jobs = [(d, ns.virtual, ns.raw) for d in diagrams]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            results = list(pool.map(_compute_job, jobs))
    else:
        results = [_compute_job(job) for job in jobs]
    status = 0
    for name, (text, err, code) in zip(ns.files, results):
        if err is None:
            print(text)
        else:
            print(f"{name}: {err}", file=sys.stderr)
            status = max(status, code)
    return status


def cmd_cover(ns) -> int:
    text = render_diagram(double_cover(_load(ns.file)))
    if ns.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(ns.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def cmd_compare(ns) -> int:
    a, b = _load(ns.file1), _load(ns.file2)
    same = twisted_jkss(a).equivalent(twisted_jkss(b))
    print("EQUAL_UP_TO_X_POWER" if same else "DISTINCT")
    return 0


def cmd_random(ns) -> int:
    try:
        d = random_diagram(ns.crossings, ns.bars, ns.seed)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    sys.stdout.write(render_diagram(d))
    return 0


def cmd_walk(ns) -> int:
    d = random_walk(_load(ns.file), ns.steps, ns.seed)
    sys.stdout.write(render_diagram(d))
    return 0


def cmd_selftest(ns) -> int:
    failed = False
    for result in run_all(ns.seed, ns.count):
        status = "PASS" if result.ok else "FAIL"
        print(f"{status} {result.name} ({result.trials} trials, {len(result.failures)} failures)")
        for line in result.failures[:5]:
            print(f"    {line}")
        failed |= not result.ok
    return 1 if failed else 0


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jkss", description="JKSS invariants of virtual and twisted links.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="print the invariant of each diagram file")
    p.add_argument("files", nargs="+", metavar="FILE", help="diagram files; '-' reads stdin")
    form = p.add_mutually_exclusive_group()
    form.add_argument("--raw", action="store_true", help="print the determinant as computed")
    form.add_argument("--canonical", action="store_true", help="normalize the x power (default)")
    p.add_argument("--virtual", action="store_true", help="JKSS invariant of a bar-free diagram")
    p.add_argument("--jobs", type=_nonneg, default=1, help="worker processes for several files")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("cover", help="write the double covering diagram")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("compare", help="compare twisted invariants up to a power of x")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("random", help="print a random diagram")
    p.add_argument("--crossings", type=_nonneg, default=3)
    p.add_argument("--bars", type=_nonneg, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("walk", help="apply random invariance-preserving moves")
    p.add_argument("file")
    p.add_argument("--steps", type=_nonneg, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("selftest", help="run the randomized property suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=_nonneg, default=50)
    p.set_defaults(func=cmd_selftest)
    return parser


def _format_warning(message, category, filename, lineno, line=None) -> str:
    return f"jkss: warning: {message}\n"


def main(argv: list[str] | None = None) -> int:
    warnings.formatwarning = _format_warning
    ns = build_parser().parse_args(argv)
    try:
        return ns.func(ns)
    except CliError as exc:
        print(f"jkss: {exc}", file=sys.stderr)
        return exc.status


if __name__ == "__main__":
    sys.exit(main())
