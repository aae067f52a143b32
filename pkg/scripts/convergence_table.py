"""Print the exact distance-to-stationarity table for the awakening chain.

Each row gives the n-th awakening distribution in exact rationals together
with its total variation distance to the stationary [1/3, 1/3, 1/3]. The
distance halves every step (it is 1/(3*2^(n-1))), so the table doubles as a
worked demonstration of geometric convergence.

Usage: python3 scripts/convergence_table.py [--n-max N]
"""

import argparse
from fractions import Fraction

from sbchain.markov_core import DistributionVector, total_variation_distance
from sbchain.rationals import format_rational
from sbchain.sbp_model import exact_distribution


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-max", type=int, default=16, metavar="N")
    args = parser.parse_args()

    third = Fraction(1, 3)
    pi = DistributionVector([third, third, third])
    print(f"{'n':>4}  {'P(M_H)':>16}  {'P(M_T)':>16}  {'P(Tu)':>16}  tv to stationary")
    for n in range(1, args.n_max + 1):
        dist = exact_distribution(n)
        tv = total_variation_distance(dist, pi)
        cells = "  ".join(f"{format_rational(w):>16}" for w in dist.weights)
        print(f"{n:>4}  {cells}  {format_rational(tv)}")


if __name__ == "__main__":
    main()
