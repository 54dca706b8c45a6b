"""Hypertree counts by rank and height, with a brute-force cross-check."""

from __future__ import annotations

import argparse
import time
from collections import Counter

from mmspace.hypertree import brute_force_hypertrees, enumerate_hypertrees


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--brute-max-n", type=int, default=5, help="largest rank to brute-force")
    args = ap.parse_args()
    print("n\ttotal\tby height\tbrute force\tseconds")
    for n in range(2, args.max_n + 1):
        t0 = time.perf_counter()
        trees = enumerate_hypertrees(n)
        heights = Counter(t.height for t in trees)
        brute = len(brute_force_hypertrees(n)) if n <= args.brute_max_n else "-"
        row = [n, len(trees), dict(sorted(heights.items())), brute, f"{time.perf_counter() - t0:.2f}"]
        print("\t".join(map(str, row)))


if __name__ == "__main__":
    main()
