#!/usr/bin/env python3
"""Calibrate the KP convention and print residuals for several r."""
import argparse
import json

from rspin.hurwitz import calibrate_kp, kp_residual


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-r", type=int, default=3)
    ap.add_argument("--degree", type=int, default=5)
    args = ap.parse_args()
    conv, table = calibrate_kp()
    print("calibration:", json.dumps(table, indent=1))
    print("chosen:", conv.describe())
    ok = True
    for r in range(1, args.max_r + 1):
        rep = kp_residual(r, args.degree)
        ok &= rep.ok
        print(f"r={r} degree<={args.degree} beta-order={rep.beta_order} residual={rep.residual}")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
