"""Command-line driver.

    rspin hurwitz --genus 0 --r 1 --profile 2
    rspin elsv -g 1 --n 1 --r 1 --profile 1
    rspin verify-all --r 2 --max-euler 2

Exit status: 0 all asserted checks pass, 1 an asserted check failed,
2 usage / configuration error.  An optional JSON config file (``--config``)
holds the same keys as the long flags (dashes -> underscores); flags win.
Reports contain no timings, so equal config + seed gives equal bytes.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field, fields
from itertools import combinations_with_replacement
from pathlib import Path

from . import hurwitz, mm, psi, spectral
from .cohft import f_number
from .hurwitz import Profile, connected_hurwitz

log = logging.getLogger("rspin")

REPORT_SCHEMA = "rspin-report/1"
SUITES = ("hurwitz", "elsv", "spectral-lemmas", "matrix-model", "kp-check")
PROVED_CELLS = ((0, 3), (0, 4), (1, 1))
EVIDENCE_CELLS = ((1, 2), (2, 1))


class ConfigError(ValueError):
    pass


@dataclass
class CampaignConfig:
    r: int = 2
    genus: int | None = None
    n: int | None = None
    profile: tuple | None = None
    order: int = 5             # KP truncation degree
    k_bound: int = 4
    max_euler: int = 2         # 2g - 2 + n cap for the elsv campaign
    oracle_max_K: int = hurwitz.ORACLE_MAX_K
    oracle_max_m: int = hurwitz.ORACLE_MAX_M
    cache_dir: str | None = None
    format: str = "json"
    seed: int = 0
    evidence_mode: bool = False
    suites: tuple = SUITES

    def validate(self) -> None:
        if self.r < 1:
            raise ConfigError("--r must be >= 1")
        if self.format not in ("json", "csv", "md"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.oracle_max_K > hurwitz.ORACLE_MAX_K or self.oracle_max_m > hurwitz.ORACLE_MAX_M:
            raise ConfigError(f"oracle guard: K <= {hurwitz.ORACLE_MAX_K}, m <= {hurwitz.ORACLE_MAX_M}")
        if self.k_bound < 1 or self.order < 1:
            raise ConfigError("--k-bound and --order must be positive")
        if self.profile is not None and any(k < 1 for k in self.profile):
            raise ConfigError("profile entries must be positive")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suites {bad}")


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    asserted: bool = True
    value: object = None


@dataclass
class ReportDocument:
    config: dict
    checks: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks if c.asserted)

    def to_dict(self) -> dict:
        return {"schema": REPORT_SCHEMA, "config": self.config, "ok": self.ok,
                "checks": [asdict(c) for c in self.checks], "details": self.details}

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=1, sort_keys=True, default=str) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["suite", "check", "verdict", "asserted", "value"])
            for c in self.checks:
                w.writerow([c.suite, c.name, _verdict(c.ok), c.asserted,
                            "" if c.value is None else c.value])
            return buf.getvalue()
        lines = ["| suite | check | verdict | asserted | value |", "|---|---|---|---|---|"]
        for c in self.checks:
            lines.append(f"| {c.suite} | {c.name} | {_verdict(c.ok)} | {c.asserted} | "
                         f"{'' if c.value is None else c.value} |")
        return "\n".join(lines) + "\n"


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# ---------------------------------------------------------------------------
# suites

def _suite_hurwitz(cfg: CampaignConfig, doc: ReportDocument) -> None:
    rows = hurwitz.oracle_comparison(cfg.oracle_max_K, cfg.oracle_max_m, range(1, cfg.r + 1))
    bad = [[r, list(mu), m, str(a), str(b)] for r, mu, m, a, b in rows if a != b]
    doc.checks.append(Check("hurwitz", f"oracle K<={cfg.oracle_max_K} m<={cfg.oracle_max_m} "
                                       f"r<={cfg.r}", not bad, value=f"{len(rows)} cells"))
    doc.details["hurwitz"] = {"cells": len(rows), "disagreements": bad}


def elsv_profiles(r: int, cells, k_bound: int, max_euler: int):
    for g, n in cells:
        if 2 * g - 2 + n > max_euler:
            continue
        for k in combinations_with_replacement(range(1, k_bound + 1), n):
            p = Profile(g, r, k)
            if p.valid:
                yield p


def _suite_elsv(cfg: CampaignConfig, doc: ReportDocument) -> None:
    out = []
    groups = [("proved", PROVED_CELLS, range(1, min(cfg.r, 3) + 1), cfg.k_bound, True),
              ("evidence", EVIDENCE_CELLS, range(1, min(cfg.r, 2) + 1), min(cfg.k_bound, 4),
               cfg.evidence_mode)]
    for label, cells, rs, kb, asserted in groups:
        bad, count = [], 0
        for r in rs:
            for p in elsv_profiles(r, cells, kb, cfg.max_euler):
                count += 1
                h, f = connected_hurwitz(p), f_number(p)
                if h != f:
                    bad.append({"g": p.g, "r": p.r, "k": list(p.k), "h": str(h), "f": str(f)})
        doc.checks.append(Check("elsv", f"{label} cells", not bad, asserted, f"{count} profiles"))
        out.append({"group": label, "profiles": count, "mismatches": bad})
    doc.details["elsv"] = out


def _suite_spectral(cfg: CampaignConfig, doc: ReportDocument) -> None:
    lem = spectral.lemma_report()
    rs = tuple(range(1, min(cfg.r, 3) + 1))
    sc = spectral.scaling_report(rs)
    tri = spectral.triangle_report(tuple(range(1, min(cfg.r, 2) + 1)), cfg.k_bound)
    doc.checks.append(Check("spectral-lemmas", "V_j direct = Bernoulli",
                            all(x["agree"] for x in lem["V"])))
    doc.checks.append(Check("spectral-lemmas", "U_k direct = Bernoulli",
                            all(x["agree"] for x in lem["U"])))
    doc.checks.append(Check("spectral-lemmas", "xi~ routes agree",
                            all(x["agree"] for x in lem["xi"])))
    doc.checks.append(Check("spectral-lemmas", "U_0 = 1, V_0 = 1",
                            all(x["U0_is_identity"] and x["V0_is_one"] for x in lem["normalisation"])))
    doc.checks.append(Check("spectral-lemmas", f"scaling identity r<={max(rs)}", sc["ok"]))
    doc.checks.append(Check("spectral-lemmas", "eo = doss = hurwitz", tri["ok"]))
    doc.details["spectral"] = {"lemmas": lem, "scaling": sc, "triangle": tri}


def _suite_mm(cfg: CampaignConfig, doc: ReportDocument) -> None:
    rep = mm.mm_report(max_K=3, rs=tuple(range(1, min(cfg.r, 2) + 1)), seed=cfg.seed)
    doc.checks.append(Check("matrix-model", "A identity (seeded)", not rep["a_identity"]["failures"],
                            value=f"{rep['a_identity']['instances']} instances"))
    stated = rep["coefficient_checks"]
    doc.checks.append(Check("matrix-model", "t^K coefficients, stated minimal D",
                            all(c["verdict"] == "PASS" for c in stated),
                            value=f"{sum(c['verdict'] == 'PASS' for c in stated)}/{len(stated)}"))
    safe = rep["coefficient_checks_sufficient_d"]
    doc.checks.append(Check("matrix-model", "t^K coefficients, D = K + N - 1",
                            all(c["verdict"] == "PASS" for c in safe),
                            value=f"{sum(c['verdict'] == 'PASS' for c in safe)}/{len(safe)}"))
    doc.details["matrix-model"] = rep


def _suite_kp(cfg: CampaignConfig, doc: ReportDocument) -> None:
    reps = [hurwitz.kp_residual(r, cfg.order) for r in range(1, cfg.r + 1)]
    for rep in reps:
        doc.checks.append(Check("kp-check", f"r={rep.r} degree<={rep.degree_bound}", rep.ok,
                                value=str(rep.residual)))
    doc.details["kp-check"] = [rep.to_dict() for rep in reps]


_RUNNERS = {"hurwitz": _suite_hurwitz, "elsv": _suite_elsv, "spectral-lemmas": _suite_spectral,
            "matrix-model": _suite_mm, "kp-check": _suite_kp}


def _with_cache(cfg: CampaignConfig, fn):
    if cfg.cache_dir is None:
        return fn()
    path = Path(cfg.cache_dir) / "psi.json"
    try:
        loaded = psi.load_cache(path)
    except (ValueError, KeyError) as exc:
        log.warning("ignoring unreadable cache %s: %s", path, exc)
        loaded = 0
    if path.exists() and not loaded:
        log.warning("cache %s has another format version; recomputing", path)
    try:
        return fn()
    finally:
        psi.save_cache(path)


def run_campaign(cfg: CampaignConfig) -> ReportDocument:
    cfg.validate()
    doc = ReportDocument(config=_config_dict(cfg))

    def go():
        for s in cfg.suites:
            t = time.perf_counter()
            _RUNNERS[s](cfg, doc)
            log.info("%s done in %.1fs", s, time.perf_counter() - t)
        return doc
    return _with_cache(cfg, go)


def _config_dict(cfg: CampaignConfig) -> dict:
    d = asdict(cfg)
    d.pop("cache_dir")       # caches affect timing only
    d["profile"] = list(cfg.profile) if cfg.profile else None
    d["suites"] = list(cfg.suites)
    return d


# ---------------------------------------------------------------------------
# argument handling

def _profile(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad profile {text!r}; expected e.g. 2,1,1")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default option values")
    common.add_argument("--r", type=int)
    common.add_argument("-g", "--genus", "--g", dest="genus", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--profile", "--k", dest="profile", type=_profile,
                        help="comma-separated k_i")
    common.add_argument("--order", type=int)
    common.add_argument("--k-bound", dest="k_bound", type=int)
    common.add_argument("--max-euler", dest="max_euler", type=int)
    common.add_argument("--cache-dir", dest="cache_dir")
    common.add_argument("--format", choices=("json", "csv", "md"))
    common.add_argument("--seed", type=int)
    common.add_argument("--evidence-mode", dest="evidence_mode", action="store_true", default=None)
    common.add_argument("-v", "--verbose", action="store_true")
    p = argparse.ArgumentParser(prog="rspin", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in SUITES + ("verify-all",):
        sub.add_parser(name, parents=[common])
    return p


def config_from_args(ns: argparse.Namespace) -> CampaignConfig:
    values: dict = {}
    if ns.config:
        try:
            values.update(json.loads(Path(ns.config).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {ns.config}: {exc}")
    known = {f.name for f in fields(CampaignConfig)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    for f in known:
        v = getattr(ns, f, None)
        if v is not None:
            values[f] = v
    if "profile" in values and values["profile"] is not None:
        values["profile"] = tuple(values["profile"])
    if ns.command != "verify-all":
        values["suites"] = (ns.command,)
    elif "suites" in values:
        values["suites"] = tuple(values["suites"])
    try:
        return CampaignConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc))


def _single_value(cmd: str, cfg: CampaignConfig) -> int:
    """hurwitz / elsv with an explicit profile: print the numbers directly."""
    g = 0 if cfg.genus is None else cfg.genus
    p = Profile(g, cfg.r, cfg.profile)
    if cfg.n is not None and cfg.n != p.n:
        raise ConfigError(f"--n {cfg.n} does not match profile length {p.n}")
    if not p.valid:
        raise ConfigError(f"no integral m for g={g}, r={cfg.r}, k={list(cfg.profile)}")
    h = connected_hurwitz(p)
    if cmd == "hurwitz":
        print(h)
        return 0
    f = f_number(p)
    proved = (p.g, p.n) in PROVED_CELLS
    print(f"h={h}, f={f}, verdict {_verdict(h == f)}" + ("" if proved else " (unproved cell)"))
    return 0 if h == f or not (proved or cfg.evidence_mode) else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(ns)
        cfg.validate()
        if ns.command in ("hurwitz", "elsv") and cfg.profile:
            return _single_value(ns.command, cfg)
        doc = run_campaign(cfg)
    except (ConfigError, hurwitz.OracleGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(doc.render(cfg.format))
    return 0 if doc.ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
