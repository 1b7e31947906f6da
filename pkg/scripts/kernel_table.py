"""Print the descent kernel and the run-block correlation table.

The kernel is computed twice, once by exact Laurent inversion over
rationals and once in floating point, and both routes are shown so any
disagreement is visible at a glance.  Correlations for contiguous
descent runs come out as the closed-form block factors.
"""
from __future__ import annotations

import argparse
from fractions import Fraction

from permlab.dpp import block_correlation, descent_kernel, limit_descent_density


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="Descent kernel table for a fixed-point mass")
    parser.add_argument("--x0", default="0",
                        help="fixed-point mass as a rational, e.g. 1/3")
    parser.add_argument("--max-offset", type=int, default=8,
                        help="largest kernel offset to print")
    parser.add_argument("--max-run", type=int, default=5,
                        help="largest descent run length to print")
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    mass = Fraction(args.x0)
    kernel = descent_kernel(mass, args.max_offset)
    print(f"# density of single descents: {limit_descent_density([float(mass)]):.6f}")
    print("offset,exact,float")
    for offset in range(-1, args.max_offset + 1):
        value = kernel.at(offset)
        print(f"{offset},{value},{float(value):.12g}")
    print("run_length,correlation")
    for length in range(1, args.max_run + 1):
        rho = block_correlation(length, mass)
        print(f"{length},{rho}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
