"""Verify the power relations and refutation radius for the counterexample family.

Usage: python scripts/ct_family.py [N_MAX]   (default 3)
"""

import json
import sys
import time

from affine_growth import ct_family_verify


def main(n_max: int = 3) -> None:
    for n in range(1, n_max + 1):
        start = time.perf_counter()
        report = ct_family_verify(n)
        elapsed = time.perf_counter() - start
        print(f"n={n} relations={len(report.verified_relations)} "
              f"verified={report.all_verified} refutation_radius={report.dplus_lower_claim} "
              f"unresolved={len(report.unresolved)} [{elapsed:.2f}s]")
        if n == n_max:
            print(json.dumps(report.to_json(), indent=2, sort_keys=True))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 3)
