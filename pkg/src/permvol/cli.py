"""Command-line interface.

Subcommands: volume, gamma, paths, labels, faces, verify, eval.  Output goes
to stdout only when the command succeeds; errors go to stderr with exit
status 1 (computation) or 2 (usage).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from typing import Sequence, TextIO

from . import dyck, oracle, ratpoly, typea, volume as vol
from .ratpoly import ScaledPoly, render

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


def _rationals(text: str):
    try:
        values = ratpoly.parse_rationals(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def _indices(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permvol",
        description="Exact volume polynomials of type-A permutohedra via Dyck paths.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=["plain", "latex", "json"], default="plain")

    def method(p):
        p.add_argument("--method", choices=["dyck", "recursive"], default="recursive")

    def threads(p):
        p.add_argument("--threads", type=_positive, default=1)

    p = sub.add_parser("volume", help="volume polynomial V_n")
    p.add_argument("--n", type=_nonneg, required=True)
    method(p), fmt(p), threads(p)

    p = sub.add_parser("gamma", help="a linear factor G_{d,i}[u], or the product for a path")
    p.add_argument("--d", type=_positive)
    p.add_argument("--i", type=_positive)
    p.add_argument("--u", type=_nonneg, default=0)
    p.add_argument("--path", help="N/E string; prints the product over its north steps")
    p.add_argument("--prime", action="store_true", help="use G' = G / sqrt(c_{d,i,i})")
    fmt(p)

    p = sub.add_parser("paths", help="list the n-Dyck paths")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--with-gamma", action="store_true", help="append labels and path product")
    fmt(p)

    p = sub.add_parser("labels", help="north-step labels (d,i,u) of a path")
    p.add_argument("--path", required=True)
    fmt(p)

    p = sub.add_parser("faces", help="face volume V_J")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--J", type=_indices, required=True)
    method(p), fmt(p)

    p = sub.add_parser("verify", help="cross-check the formula against geometry (JSON report)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--x", type=_rationals, required=True)
    p.add_argument("--samples", type=_positive, default=200_000)
    p.add_argument("--seed", type=_nonneg, default=oracle.DEFAULT_SEED)
    threads(p)

    p = sub.add_parser("eval", help="evaluate V_n at a weight")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--x", type=_rationals, required=True)
    method(p), fmt(p), threads(p)
    return parser


def _format_value(value, radicand: int, fmt: str) -> str:
    approx = float(value) * math.sqrt(radicand)
    if fmt == "json":
        return json.dumps({"rational": str(value), "radicand": radicand, "float": approx})
    if fmt == "latex":
        return render(ScaledPoly(value, radicand), "latex")
    exact = str(value) if radicand == 1 else f"{value}*sqrt({radicand})"
    return f"{exact}\t{approx!r}"


def _labels_text(labels, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([list(lab) for lab in labels])
    return "[" + ",".join(str(lab) for lab in labels) + "]"


def _run(args) -> str:
    cmd = args.command
    if cmd == "volume":
        v = vol.volume(args.n, args.method, threads=args.threads)
        return render(v.value, args.format)

    if cmd == "gamma":
        if args.path is not None:
            if args.d is not None or args.i is not None:
                raise _Usage("--path cannot be combined with --d/--i")
            path = dyck.DyckPath.parse(args.path)
            return render(vol.gamma_path(path, normalized=not args.prime), args.format)
        if args.d is None or args.i is None:
            raise _Usage("gamma needs --d and --i (or --path)")
        return render(vol.gamma(args.d, args.i, args.u, normalized=not args.prime), args.format)

    if cmd == "paths":
        lines = []
        for path in dyck.enumerate_paths(args.n):
            if args.with_gamma:
                labels = dyck.north_step_labels(path)
                poly = render(vol.gamma_path(path), args.format)
                lines.append(f"{path}\t{_labels_text(labels, 'plain')}\t{poly}")
            else:
                lines.append(str(path))
        return "\n".join(lines)

    if cmd == "labels":
        path = dyck.DyckPath.parse(args.path)
        return _labels_text(dyck.north_step_labels(path), args.format)

    if cmd == "faces":
        J = typea.SimpleSubset(args.n, frozenset(args.J))
        return render(vol.face_volume(args.n, J, args.method), args.format)

    if cmd == "verify":
        if len(args.x) != args.n:
            raise _Usage(f"--x has {len(args.x)} values but --n is {args.n}")
        report = oracle.verify(args.n, args.x, args.samples, args.seed, args.threads)
        args._verify_failed = not report.passed
        return report.to_json()

    if cmd == "eval":
        if len(args.x) != args.n:
            raise _Usage(f"--x has {len(args.x)} values but --n is {args.n}")
        typea.WeightVector(tuple(args.x)).require_dominant()
        v = vol.volume(args.n, args.method, threads=args.threads)
        value, radicand = ratpoly.evaluate(v.value, args.x)
        return _format_value(value, radicand, args.format)

    raise _Usage(f"unknown command {cmd!r}")  # argparse rejects this first


class _Usage(Exception):
    pass


def execute(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Parse ``argv``, run the command, write its output to ``out``; return the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        # argparse prints help and usage errors straight to sys.stdout/sys.stderr
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        text = _run(args)
    except _Usage as exc:
        parser.print_usage(err)
        err.write(f"permvol: error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, ArithmeticError, TypeError) as exc:
        err.write(f"permvol: {type(exc).__name__}: {exc}\n")
        return EXIT_COMPUTE
    out.write(text + "\n")
    return EXIT_COMPUTE if getattr(args, "_verify_failed", False) else EXIT_OK


def main() -> None:
    sys.exit(execute())


if __name__ == "__main__":
    main()
