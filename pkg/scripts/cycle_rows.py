"""How many link-cycle rows each mode produces, by link and cycle length."""

from __future__ import annotations

import argparse
from collections import Counter

from mmspace.complex import MODES, link, representative_trees
from mmspace.cycles import simple_cycles
from mmspace.hypertree import classify4


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mode", choices=MODES, default="out")
    args = ap.parse_args()
    for tree in representative_trees(args.mode):
        g = link(tree, args.mode)
        lengths = Counter(len(c) for c in simple_cycles(g.adjacency()))
        print(f"{classify4(tree).name}\t{len(g.vertices)}v {len(g.edges)}e\tcycles {dict(sorted(lengths.items()))}")


if __name__ == "__main__":
    main()
