"""Compare the Mahler-measure lower bound on d+ with what the search can certify.

Usage: python scripts/lehmer_gap.py [N_MAX]   (default 8)
"""

import sys

from affine_growth.mahler import lehmer_experiment

POLYS = {
    "lehmer": (1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1),
    "golden": (-1, -1, 1),
    "x^3+x+1": (1, 1, 0, 1),
    "x^2+x+1": (1, 1, 1),
}


def main(n_max: int = 8) -> None:
    print("name,mahler_lo,mahler_hi,implied_dplus_lower,certificate_found,dplus_bracket,"
          "polynomial_trend")
    for name, coeffs in POLYS.items():
        r = lehmer_experiment(coeffs, n_max, cert_radius=2)
        m = r["mahler"]["measure"]
        print(f"{name},{m['lo_decimal']},{m['hi_decimal']},{r['implied_dplus_lower']},"
              f"{r['certificate_found']},{r['dplus_bracket']},{r['polynomial_trend']}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 8)
