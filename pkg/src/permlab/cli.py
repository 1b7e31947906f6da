"""Command line interface.

Permutations travel as one whitespace-separated word per line; shapes
as one comma-separated row-length list per line.  Experiment configs
are flat key=value files; explicit flags override file values.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import dpp, harness, limits
from .perms import Permutation, descent_set, lds_length, lis_length
from .young import rsk_shape


def _parse_word(line: str) -> Permutation:
    return Permutation([int(tok) for tok in line.split()])


def _read_words(path: str | None):
    stream = open(path) if path else sys.stdin
    try:
        for line in stream:
            line = line.strip()
            if line:
                yield _parse_word(line)
    finally:
        if path:
            stream.close()


def _parse_grid(text: str) -> np.ndarray:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("grid syntax is start:stop:step")
        start, stop, step = (float(p) for p in parts)
        count = int(round((stop - start) / step)) + 1
        return start + step * np.arange(count)
    return np.array([float(p) for p in text.split(",") if p.strip()])


def _sampler_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dist", default="uniform", choices=harness.DISTRIBUTIONS)
    parser.add_argument("--theta", type=float, default=1.0)
    parser.add_argument("--weights", default=None, help="per-length cycle weights w1,w2,...")
    parser.add_argument("--x", default=None, help="stick masses x1,x2,... for central laws")
    parser.add_argument("--x0", type=float, default=0.0, help="fixed-point probability for dilution")
    parser.add_argument("--base", default="uniform", choices=("uniform", "ewens", "single-cycle"))
    parser.add_argument("--seed", type=int, default=0)


def _spec_fields_from_args(args: argparse.Namespace) -> dict[str, str]:
    mapping: dict[str, str] = {"dist": args.dist, "theta": str(args.theta),
                               "x0": str(args.x0), "base": args.base, "seed": str(args.seed)}
    if args.weights:
        mapping["weights"] = args.weights
    if args.x:
        mapping["sticks"] = args.x
    return mapping


def _cmd_sample(args: argparse.Namespace) -> int:
    mapping = _spec_fields_from_args(args)
    mapping.update({"kind": "couple", "n": str(args.n), "reps": str(max(1, args.count))})
    spec = harness.spec_from_mapping(mapping)
    for index in range(args.count):
        sigma = harness.draw_sample(spec, "a", index)
        print(" ".join(str(v) for v in sigma.as_tuple()))
    return 0


def _cmd_lis(args: argparse.Namespace) -> int:
    for sigma in _read_words(args.file):
        value = lds_length(sigma) if args.decreasing else lis_length(sigma)
        print(value)
    return 0


def _cmd_shape(args: argparse.Namespace) -> int:
    for sigma in _read_words(args.file):
        print(",".join(str(r) for r in rsk_shape(sigma).rows))
    return 0


def _cmd_descents(args: argparse.Namespace) -> int:
    for sigma in _read_words(args.file):
        print(" ".join(str(d) for d in descent_set(sigma)))
    return 0


def _cmd_couple(args: argparse.Namespace) -> int:
    mapping = _spec_fields_from_args(args)
    mapping.update({"kind": "couple", "n": str(args.n), "reps": str(args.reps)})
    if args.out:
        mapping["out"] = args.out
    result = harness.run(harness.spec_from_mapping(mapping))
    harness.save_result(result)
    print(harness.format_summary(result), file=sys.stderr)
    return 0


def _cmd_kernel(args: argparse.Namespace) -> int:
    x0 = Fraction(args.x0) if args.exact else float(Fraction(args.x0))
    kernel = dpp.descent_kernel(x0, band=args.band)
    print("offset,coefficient")
    for offset in range(-1, args.band + 1):
        value = kernel.at(offset)
        print(f"{offset},{value if args.exact else '%.17g' % value}")
    return 0


def _cmd_descent_corr(args: argparse.Namespace) -> int:
    mapping = _spec_fields_from_args(args)
    mapping.update({"kind": "descent-corr", "n": str(args.n), "reps": str(args.reps),
                    "sets": args.sets})
    if args.out:
        mapping["out"] = args.out
    result = harness.run(harness.spec_from_mapping(mapping))
    harness.save_result(result)
    print(harness.format_summary(result), file=sys.stderr)
    return 0


def _cmd_f2(args: argparse.Namespace) -> int:
    print("s,F2")
    for s in _parse_grid(args.s):
        print("%.17g,%.17g" % (s, limits.tracy_widom_cdf(float(s), args.order)))
    return 0


def _cmd_omega(args: argparse.Namespace) -> int:
    print("s,omega")
    for s in _parse_grid(args.s):
        print("%.17g,%.17g" % (s, limits.vkls_curve(float(s))))
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    mapping: dict[str, str] = {}
    if args.config:
        with open(args.config) as fh:
            mapping.update(harness.parse_config_text(fh.read()))
    mapping["kind"] = args.kind
    for key in harness._FIELD_PARSERS:
        if key == "kind":
            continue
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            mapping[key] = value
    result = harness.run(harness.spec_from_mapping(mapping))
    harness.save_result(result)
    print(harness.format_summary(result), file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permlab",
                                     description="random permutation laws and their limits")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw permutations, one word per line")
    _sampler_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("lis", help="longest monotone subsequence lengths")
    p.add_argument("--file", default=None, help="words file, default stdin")
    p.add_argument("--decreasing", action="store_true")
    p.set_defaults(func=_cmd_lis)

    p = sub.add_parser("shape", help="insertion shapes of words")
    p.add_argument("--file", default=None)
    p.set_defaults(func=_cmd_shape)

    p = sub.add_parser("descents", help="descent positions of words")
    p.add_argument("--file", default=None)
    p.set_defaults(func=_cmd_descents)

    p = sub.add_parser("couple", help="cycle-merging before/after statistics")
    _sampler_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_couple)

    p = sub.add_parser("kernel", help="descent kernel coefficient table")
    p.add_argument("--x0", default="0", help="fixed mass, fraction syntax allowed")
    p.add_argument("--band", type=int, default=8)
    p.add_argument("--exact", action="store_true", help="print exact fractions")
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("descent-corr", help="empirical vs exact descent correlations")
    _sampler_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, default=10000)
    p.add_argument("--sets", required=True, help='queries like "1,2;1,3;2,4"')
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_descent_corr)

    p = sub.add_parser("f2", help="edge law values on a grid")
    p.add_argument("--s", required=True, help='grid "a:b:step" or "v1,v2,..."')
    p.add_argument("--order", type=int, default=limits.DEFAULT_QUAD_ORDER)
    p.set_defaults(func=_cmd_f2)

    p = sub.add_parser("omega", help="limit curve values on a grid")
    p.add_argument("--s", required=True)
    p.set_defaults(func=_cmd_omega)

    p = sub.add_parser("experiment", help="run a configured experiment")
    p.add_argument("kind", choices=harness.KINDS)
    p.add_argument("--config", default=None, help="flat key=value file")
    for key in harness._FIELD_PARSERS:
        if key == "kind":
            continue
        p.add_argument(f"--{key.replace('_', '-')}", dest=key, default=None)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
