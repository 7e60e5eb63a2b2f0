"""Command-line interface.

Exit codes: 0 success, 2 undetermined classification, 3 malformed input,
4 invalid line/linkage data, 5 numerical failure. Errors are printed to
stderr as one-line JSON objects.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

from .algebra import LineError, format_scalar, parse_scalar
from .classify import UNDETERMINED, ClassificationError, classify
from .generate import (
    ConstructionError,
    construct_cubic_type,
    example1,
    random_cubic_type,
    random_line,
    random_line_symmetric,
    random_parallel,
)
from .io import FormatError, configs_from_json, configs_to_json, dumps_linkage, loads_linkage
from .lambda_matrix import AdvisoryWarning, build_lambda_matrix, lambda_rank, write_real_csv
from .linkage import ClosureError, LinkageError
from .motionpoly import MotionPolynomialError
from .sampler import SamplerError, format_poses, trace_configuration_curve

EXIT_OK = 0
EXIT_UNDETERMINED = 2
EXIT_FORMAT = 3
EXIT_INVARIANT = 4
EXIT_NUMERIC = 5


class CLIError(Exception):
    def __init__(self, code, kind, message):
        super().__init__(message)
        self.code = code
        self.kind = kind


def _read(path):
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CLIError(EXIT_FORMAT, "io", str(exc)) from None


def _load(path):
    return loads_linkage(_read(path))


def _emit(obj, out):
    out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _parse_grid(spec):
    try:
        a, b, n = spec.split(":")
        a, b, n = parse_scalar(a), parse_scalar(b), int(n)
    except ValueError:
        raise CLIError(EXIT_FORMAT, "argument", f"grid must be a:b:n, got {spec!r}") from None
    if n < 1:
        raise CLIError(EXIT_FORMAT, "argument", "grid needs n >= 1")
    if n == 1:
        return [a]
    return [a + (b - a) * Fraction(k, n - 1) for k in range(n)]


def _parse_pairs(spec):
    try:
        pairs = [tuple(parse_scalar(x) for x in chunk.split(",")) for chunk in spec.split(";")]
    except ValueError:
        raise CLIError(EXIT_FORMAT, "argument", f"bad pairs {spec!r}") from None
    if len(pairs) != 3 or any(len(p) != 2 for p in pairs):
        raise CLIError(EXIT_FORMAT, "argument", "pairs must be 'a1,b1;a2,b2;a3,b3'")
    return pairs


def cmd_classify(args, out, err):
    L = _load(args.linkage)
    res = classify(L, seed=args.seed)
    _emit(res.to_json(), out)
    return EXIT_UNDETERMINED if res.family == UNDETERMINED else EXIT_OK


def cmd_generate(args, out, err):
    import random

    if args.family == "parallel":
        L = random_parallel(args.seed, args.bound)
    elif args.family == "linesym":
        L, _ = random_line_symmetric(args.seed, args.bound)
    elif args.pairs:
        rng = random.Random(args.seed)
        pairs = _parse_pairs(args.pairs)
        L = construct_cubic_type(pairs, [random_line(rng, args.bound) for _ in range(3)])
    else:
        L, _ = random_cubic_type(args.seed, args.bound)
    out.write(dumps_linkage(L) + "\n")
    return EXIT_OK


def cmd_rank(args, out, err):
    L = _load(args.linkage)
    M = build_lambda_matrix(L)
    if args.csv:
        write_real_csv(M, args.csv)
    mode = args.mode
    if mode == "exact" and not L.exact:
        raise CLIError(EXIT_FORMAT, "argument", "exact rank needs rational input")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", AdvisoryWarning)
        r = lambda_rank(M, "exact" if mode == "exact" else "tol", args.tol)
    for w in caught:
        err.write(json.dumps({"warning": str(w.message)}) + "\n")
    out.write(f"{r}\n")
    return EXIT_OK


def cmd_trace(args, out, err):
    L = _load(args.linkage)
    grid = _parse_grid(args.grid)
    configs = trace_configuration_curve(L, grid, args.slice)
    _emit(configs_to_json(configs), out)
    return EXIT_OK


def cmd_poses(args, out, err):
    L = _load(args.linkage)
    try:
        doc = json.loads(_read(args.configs))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    configs = configs_from_json(doc)
    text = format_poses(L, configs)
    if args.output in (None, "-"):
        out.write(text)
    else:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise CLIError(EXIT_FORMAT, "io", str(exc)) from None
    return EXIT_OK


def cmd_example1(args, out, err):
    out.write(dumps_linkage(example1()) + "\n")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="hexalink", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a linkage by its lambda-matrix rank")
    c.add_argument("linkage", nargs="?", default="-")
    c.add_argument("--seed", type=int, default=0, help="seed for the curve-point retry")
    c.set_defaults(func=cmd_classify)

    g = sub.add_parser("generate", help="synthesize a linkage")
    g.add_argument("family", choices=["parallel", "linesym", "cubic"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--bound", type=int, default=20, help="bound on random numerators/denominators")
    g.add_argument("--pairs", help="cubic only: 'a1,b1;a2,b2;a3,b3'")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("rank", help="rank of the lambda-matrix")
    r.add_argument("linkage", nargs="?", default="-")
    r.add_argument("--mode", choices=["exact", "tol"], default="exact")
    r.add_argument("--tol", type=float, default=1e-9)
    r.add_argument("--csv", help="also write the 48x7 real matrix as CSV")
    r.set_defaults(func=cmd_rank)

    t = sub.add_parser("trace", help="trace the angle-symmetric curve on a grid")
    t.add_argument("linkage", nargs="?", default="-")
    t.add_argument("--grid", required=True, help="a:b:n")
    t.add_argument("--slice", default="t3", choices=["t1", "t2", "t3"])
    t.set_defaults(func=cmd_trace)

    o = sub.add_parser("poses", help="export poses for configurations")
    o.add_argument("linkage")
    o.add_argument("--configs", required=True)
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_poses)

    e = sub.add_parser("example1", help="print the parallel-property example linkage")
    e.set_defaults(func=cmd_example1)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out, err)
    except CLIError as exc:
        code, kind, msg = exc.code, exc.kind, str(exc)
    except FormatError as exc:
        code, kind, msg = EXIT_FORMAT, "format", str(exc)
    except (LineError, LinkageError) as exc:
        code, kind, msg = EXIT_INVARIANT, "invariant", str(exc)
    except (
        ClosureError,
        SamplerError,
        ClassificationError,
        ConstructionError,
        MotionPolynomialError,
        ArithmeticError,
    ) as exc:
        code, kind, msg = EXIT_NUMERIC, "numeric", str(exc)
    err.write(json.dumps({"error": kind, "message": msg}) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
