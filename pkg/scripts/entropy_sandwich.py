"""Print ball sizes with the entropy lower bound and doubling upper bounds.

Usage: python scripts/entropy_sandwich.py [MODULUS] [N_MAX]   (default x-2, 10)
"""

import math
import sys

from affine_growth import GeneratingSet, ModulusRing, gamma_generators
from affine_growth.growth import ball_sizes, dplus_upper, entropy_bounds


def main(modulus: str = "x-2", n_max: int = 10) -> None:
    ring = ModulusRing.number_ring(modulus)
    sigma = GeneratingSet(gamma_generators(ring), ("A", "B"))
    table = ball_sizes(sigma, n_max)
    up = dplus_upper(sigma, 3)
    bounds = entropy_bounds(table, up.n if up else None)
    lower = f"{bounds.lower:.6f}" if up else "none"
    print(f"modulus={modulus} d+<={up.n if up else '?'} entropy_lower={lower}")
    print("n,ball_size,(1/n)log_size,lower_ok,doubling_ok")
    for n in range(1, n_max + 1):
        c = table.count(n)
        dbl = table.doubling_ok(n) if 2 * n <= n_max else ""
        print(f"{n},{c},{math.log(c) / n:.6f},{bounds.lower_below(n, c)},{dbl}")


if __name__ == "__main__":
    args = sys.argv[1:]
    main(args[0] if args else "x-2", int(args[1]) if len(args) > 1 else 10)
