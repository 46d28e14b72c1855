#!/usr/bin/env python3
"""Exhaustively check every exact inequality on a parameter grid.

Covers, for n in [4, nmax], 1 <= k < n and prime powers n <= q <= qmax:
positivity and total of the closed-form MDS counts, the mean-spectrum
sum identity, the lambda/mu ratio bounds, the alternating-series term
checks, the mu sandwich, the entropy (Stirling) upper bound, and both
full-rank product variants against their common lower bound.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from weightspec.formulas import bounds_sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nmax", type=int, default=12)
    parser.add_argument("--qmax", type=int, default=64)
    args = parser.parse_args()

    t0 = time.perf_counter()
    report = bounds_sweep(nmax=args.nmax, qmax=args.qmax)
    elapsed = time.perf_counter() - t0

    width = max(len(name) for name in report.checks)
    for name, count in sorted(report.checks.items()):
        print(f"{name:<{width}}  {count:>7}  ok")
    print(f"\n{report.total_checks()} checks in {elapsed:.2f}s "
          f"(n <= {args.nmax}, q <= {args.qmax}), "
          f"{len(report.failures)} failures")
    if report.failures:
        for line in report.failures[:50]:
            print("  " + line)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
