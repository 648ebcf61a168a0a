#!/usr/bin/env python3
"""Compare Hurwitz numbers with the CohFT side cell by cell; writes a CSV."""
import argparse
import csv
import time
from itertools import combinations_with_replacement
from pathlib import Path

from rspin.cohft import f_number
from rspin.hurwitz import Profile, connected_hurwitz

CELLS = {"proved": [(0, 3), (0, 4), (1, 1)], "evidence": [(1, 2), (2, 1)]}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-r", type=int, default=3)
    ap.add_argument("--k-bound", type=int, default=6)
    ap.add_argument("--evidence-k-bound", type=int, default=4)
    ap.add_argument("--out", default="results/elsv.csv")
    args = ap.parse_args()
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    mismatches = 0
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["status", "g", "r", "k", "h", "f", "equal"])
        for status, cells in CELLS.items():
            kb = args.k_bound if status == "proved" else args.evidence_k_bound
            rs = range(1, args.max_r + 1) if status == "proved" else range(1, min(args.max_r, 2) + 1)
            for r in rs:
                for g, n in cells:
                    t = time.perf_counter()
                    for k in combinations_with_replacement(range(1, kb + 1), n):
                        p = Profile(g, r, k)
                        if not p.valid:
                            continue
                        h, f = connected_hurwitz(p), f_number(p)
                        mismatches += h != f
                        w.writerow([status, g, r, " ".join(map(str, k)), h, f, h == f])
                    print(f"{status:8s} r={r} (g,n)=({g},{n}) {time.perf_counter() - t:6.1f}s")
    print(f"mismatches: {mismatches}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
