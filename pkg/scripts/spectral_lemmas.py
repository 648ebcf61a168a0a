#!/usr/bin/env python3
"""Branch-point lemma checks, scaling identity and the W = h triangle."""
import argparse
import json
from pathlib import Path

from rspin import spectral


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results")
    ap.add_argument("--k-bound", type=int, default=4)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    lem = spectral.lemma_report()
    (out / "spectral_lemmas.json").write_text(json.dumps(lem, indent=1))
    (out / "spectral_lemmas.md").write_text(spectral.lemma_report_markdown(lem))
    sc = spectral.scaling_report((1, 2, 3))
    tri = spectral.triangle_report((1, 2), args.k_bound)
    (out / "spectral_scaling.json").write_text(json.dumps(sc, indent=1))
    (out / "spectral_triangle.json").write_text(json.dumps(tri, indent=1))
    for name, rep in (("lemmas", lem), ("scaling", sc), ("triangle", tri)):
        print(f"{name:9s} {'PASS' if rep['ok'] else 'FAIL'}")
    return 0 if lem["ok"] and sc["ok"] and tri["ok"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
