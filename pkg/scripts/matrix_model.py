#!/usr/bin/env python3
"""t^K coefficient comparison at the stated and at the sufficient truncation D."""
import argparse
from pathlib import Path

from rspin import mm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-K", type=int, default=3)
    ap.add_argument("--max-r", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="results/matrix_model.json")
    args = ap.parse_args()
    rep = mm.mm_report(args.max_K, tuple(range(1, args.max_r + 1)), seed=args.seed)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(mm.report_json(rep))
    print(" K  N  r   D  verdict |  D' verdict'")
    for a, b in zip(rep["coefficient_checks"], rep["coefficient_checks_sufficient_d"]):
        print(f"{a['K']:2d} {a['N']:2d} {a['r']:2d} {a['D']:3d}  {a['verdict']:7s} | "
              f"{b['D']:3d} {b['verdict']}")
    return 0 if rep["ok"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
