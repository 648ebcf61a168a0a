#!/usr/bin/env python3
"""Write character-side vs brute-force Hurwitz tables (JSON and CSV)."""
import argparse
from pathlib import Path

from rspin.hurwitz import HurwitzTable, oracle_profiles


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-r", type=int, default=4)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    table = HurwitzTable().fill(oracle_profiles(rs=range(1, args.max_r + 1)), oracle=True)
    (out / "hurwitz_table.json").write_text(table.to_json())
    (out / "hurwitz_table.csv").write_text(table.to_csv())
    bad = table.disagreements()
    print(f"{len(table.entries)} profiles, {len(bad)} disagreements -> {out}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
