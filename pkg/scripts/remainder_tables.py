#!/usr/bin/env python3
"""Tabulate the large-n remainders behind the O(1)-error claims.

For a ladder of sizes in one residue class mod 4 this prints

* D(n): the six-piece assembly of the restricted quartic-kernel sum minus
  its direct value (stays near 0.62 for the 0 class),
* Delta(n): the restricted quartic integral minus its three-term
  expansion (settles near -1.081 for the 0 class),
* the exponential-tail row sum minus its Dedekind-eta limit (O(1/n^2)),
* the axis row sum minus pi^2/6 - |c1|/n, scaled by n^2,
* n times the edge row sum against its decay coefficient.
"""
import argparse
import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from lapasym.asymptotics import (axis_sum_expansion,                 # noqa: E402
                                 edge_sum_decay_coefficient, exp_tail_limit,
                                 restricted_integral_expansion)
from lapasym.decomposition import piece_sums                          # noqa: E402
from lapasym.lattice_sum import restricted_sum_f2                     # noqa: E402
from lapasym.quadrature import integral_f2_restricted                 # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="100,200,400,800,1600",
                        help="comma-separated ladder (one residue class mod 4)")
    args = parser.parse_args()
    sizes = [int(tok) for tok in args.sizes.split(",")]

    beta3 = edge_sum_decay_coefficient()
    tail_limit = exp_tail_limit()
    header = f"{'n':>6} {'D(n)':>12} {'Delta(n)':>12} {'exp tail':>12} " \
             f"{'n^2 axis gap':>13} {'n edge gap':>12}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        p = piece_sums(n)
        assembled = (2.0 * n * n / math.pi ** 2) * (
            p.r_log - 2.0 * p.r_atan + p.r_edge + math.pi * p.r_sqrt
            + 2.0 * math.pi * p.r_exp + p.q_axis)
        d = assembled - restricted_sum_f2(n).value
        delta = integral_f2_restricted(n).value - restricted_integral_expansion(n)
        tail = p.r_exp - tail_limit
        axis = n * n * (p.q_axis - axis_sum_expansion(n))
        edge = n * (n * p.r_edge - beta3)
        print(f"{n:>6} {d:>12.6f} {delta:>12.6f} {tail:>12.3e} "
              f"{axis:>13.6f} {edge:>12.6f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
