"""Command-line interface.

Exit codes: 0 success, 1 a checked property failed, 2 unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import io
from .bottleneck import bottleneck_distance
from .diagram import mobius_inversion
from .errors import GrodiagError
from .grocat import is_prime
from .interleave import interleaving_from_functions, interpolate, verify_interleaving
from .pipeline import homology_module
from .verification import run_all

OK, FAILED, BAD_INPUT = 0, 1, 2


def _real(x: float) -> str:
    if x == math.inf:
        return "inf"
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def _emit(obj, out: str | None):
    if out:
        io.write_json(out, obj)
    else:
        print(json.dumps(obj, indent=2))


def cmd_diagram(args) -> int:
    raw = io.load_json(args.input)
    if isinstance(raw, dict) and "simplices" in raw:
        F = homology_module(io.complex_from_json(raw), args.degree, args.field_char)
    else:
        F = io.module_from_json(raw)
    _emit(io.diagram_to_json(mobius_inversion(F)), args.out)
    return OK


def cmd_bottleneck(args) -> int:
    Y1 = io.diagram_from_json(io.load_json(args.a))
    Y2 = io.diagram_from_json(io.load_json(args.b))
    d, gamma = bottleneck_distance(Y1, Y2)
    print(_real(d))
    if args.witness:
        io.write_json(args.witness, dict(io.matching_to_json(gamma), distance=_real(d) if d == math.inf else d))
    return OK


def _interleaving_inputs(args):
    F = io.module_from_json(io.load_json(args.F))
    G = io.module_from_json(io.load_json(args.G))
    return F, G, io.interleaving_from_json(io.load_json(args.data), F, G)


def cmd_verify(args) -> int:
    F, G, data = _interleaving_inputs(args)
    problems = verify_interleaving(F, G, data)
    if problems:
        for msg in problems:
            print(msg)
        print(f"not a {_real(data.epsilon)}-interleaving ({len(problems)} violations)")
        return FAILED
    print(f"valid {_real(data.epsilon)}-interleaving")
    return OK


def cmd_interpolate(args) -> int:
    F, G, data = _interleaving_inputs(args)
    _emit(io.module_to_json(interpolate(F, G, data, args.t)), args.out)
    return OK


def cmd_stability(args) -> int:
    K = io.complex_from_json(io.load_json(args.complex))
    F, G, data = interleaving_from_functions(K.column(args.f), K.column(args.g), args.degree, args.field_char)
    d, _ = bottleneck_distance(mobius_inversion(F), mobius_inversion(G))
    print(f"bottleneck {_real(d)}, bound {_real(data.epsilon)}")
    if d <= data.epsilon:
        return OK
    print("stability bound violated")
    return FAILED


def cmd_selftest(args) -> int:
    results = run_all(args.seed, args.scale)
    for r in results:
        print(r.line())
    return OK if all(r.passed for r in results) else FAILED


def _prime(text: str) -> int:
    p = int(text)
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _degree(text: str) -> int:
    k = int(text)
    if k < 0:
        raise argparse.ArgumentTypeError("degree must be nonnegative")
    return k


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grodiag", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def homology_flags(p):
        p.add_argument("--degree", type=_degree, default=0)
        p.add_argument("--field-char", type=_prime, default=2)

    p = sub.add_parser("diagram", help="diagram of a module file or of a complex's homology")
    p.add_argument("input")
    p.add_argument("--out")
    homology_flags(p)
    p.set_defaults(run=cmd_diagram)

    p = sub.add_parser("bottleneck", help="bottleneck distance between two diagram files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--witness", help="write an optimal matching here")
    p.set_defaults(run=cmd_bottleneck)

    p = sub.add_parser("verify-interleave", help="check interleaving data between two modules")
    for name in ("F", "G", "data"):
        p.add_argument(name)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("interpolate", help="module K_t between two interleaved modules")
    for name in ("F", "G", "data"):
        p.add_argument(name)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(run=cmd_interpolate)

    p = sub.add_parser("stability-check", help="compare two filtration columns of one complex")
    p.add_argument("complex")
    p.add_argument("--f", default="value")
    p.add_argument("--g", default="value2")
    homology_flags(p)
    p.set_defaults(run=cmd_stability)

    p = sub.add_parser("selftest", help="run the randomized property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, default=0.1, help="fraction of the full instance counts")
    p.set_defaults(run=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (GrodiagError, ValueError) as exc:
        print(f"grodiag {args.command}: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
