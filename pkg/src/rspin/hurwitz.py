"""Hurwitz numbers with completed (r+1)-cycles.

Three routes to the same numbers:

* ``disconnected_coefficient`` -- character formula for the disconnected
  partition function;
* ``connected_hurwitz`` -- formal logarithm of that series;
* ``brute_force_hurwitz`` -- explicit enumeration of factorizations into
  completed-cycle terms with the transitivity ("jumping") rule.

Convention: ``connected_hurwitz`` returns numbers with the cycles of the
target permutation labelled by the k_i, so that h = |Aut k| * m! *
[beta^m p_k] log Z.  The oracle counts unlabelled cycles unless asked
otherwise.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import threading
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Iterable

from .partitions import (
    as_partition,
    automorphism_count,
    class_size,
    completed_cycle,
    dimension,
    irreducible_character,
    partitions,
    shifted_power_sum,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Profile:
    g: int
    r: int
    k: tuple

    def __post_init__(self):
        if self.g < 0 or self.r < 1:
            raise ValueError(f"bad profile (g={self.g}, r={self.r})")
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        if not self.k or any(x <= 0 for x in self.k):
            raise ValueError(f"k must be a non-empty list of positive ints: {self.k!r}")

    @property
    def n(self) -> int:
        return len(self.k)

    @property
    def K(self) -> int:
        return sum(self.k)

    @property
    def m_fraction(self) -> Fraction:
        return Fraction(self.K + self.n + 2 * self.g - 2, self.r)

    @property
    def valid(self) -> bool:
        m = self.m_fraction
        return m.denominator == 1 and m >= 0

    @property
    def m(self) -> int:
        if not self.valid:
            raise ValueError(f"{self} has non-integral m = {self.m_fraction}")
        return int(self.m_fraction)

    @property
    def parts(self) -> tuple[tuple[int, int], ...]:
        """(p_i, a_i) with k_i = r p_i + (r - 1 - a_i), 0 <= a_i < r."""
        out = []
        for ki in self.k:
            a = (self.r - 1 - ki) % self.r
            out.append(((ki - (self.r - 1 - a)) // self.r, a))
        return tuple(out)

    @property
    def mu(self):
        return as_partition(self.k)

    @classmethod
    def from_m(cls, r: int, mu, m: int) -> "Profile | None":
        """Profile with the genus determined by (r, mu, m); None if not integral."""
        mu = as_partition(mu)
        two_g = r * m - sum(mu) - len(mu) + 2
        if two_g < 0 or two_g % 2:
            return None
        return cls(two_g // 2, r, mu)


# ---------------------------------------------------------------------------
# character side

_weights_lock = threading.Lock()
_weights_cache: dict[tuple[int, tuple], dict[Fraction, Fraction]] = {}


def _eigen_weights(r: int, mu) -> dict[Fraction, Fraction]:
    """{eigenvalue: summed weight} so that D(r, mu, m) = sum w * e^m."""
    mu = as_partition(mu)
    key = (r, mu)
    with _weights_lock:
        hit = _weights_cache.get(key)
    if hit is not None:
        return hit
    K = sum(mu)
    cs = class_size(mu)
    out: dict[Fraction, Fraction] = defaultdict(Fraction)
    for lam in partitions(K):
        chi = irreducible_character(lam, mu)
        if chi == 0:
            continue
        w = Fraction(dimension(lam) * cs * chi, factorial(K) ** 2)
        out[shifted_power_sum(r + 1, lam) if lam else Fraction(0)] += w
    res = {e: w for e, w in out.items() if w}
    with _weights_lock:
        _weights_cache[key] = res
    return res


def disconnected_coefficient(r: int, mu, m: int) -> Fraction:
    """sum_lambda (dim/K!)^2 |C_mu| chi_lambda(mu)/dim * e_lambda^m."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return sum((w * e ** m for e, w in _eigen_weights(r, mu).items()), Fraction(0))


def _submultisets(mu) -> list[tuple]:
    cnt = sorted(Counter(mu).items(), reverse=True)
    out = []
    for choice in product(*(range(c + 1) for _, c in cnt)):
        nu = []
        for (part, _), c in zip(cnt, choice):
            nu.extend([part] * c)
        out.append(tuple(nu))
    return out


def _merge(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b, reverse=True))


def _fits(nu: tuple, mu_count: Counter) -> bool:
    return all(mu_count[x] >= c for x, c in Counter(nu).items())


def connected_coefficient(r: int, mu, m: int) -> Fraction:
    """[beta^m p_mu] log Z, computed on the sub-ring spanned by p_nu, nu within mu."""
    mu = as_partition(mu)
    mu_count = Counter(mu)
    subs = [nu for nu in _submultisets(mu) if nu]
    # X = Z - 1 restricted to the relevant monomials
    X = {}
    for nu in subs:
        for j in range(m + 1):
            c = disconnected_coefficient(r, nu, j) / factorial(j)
            if c:
                X[(nu, j)] = c

    def mul(A, B):
        out = defaultdict(Fraction)
        for (n1, j1), c1 in A.items():
            for (n2, j2), c2 in B.items():
                if j1 + j2 > m:
                    continue
                nu = _merge(n1, n2)
                if _fits(nu, mu_count):
                    out[(nu, j1 + j2)] += c1 * c2
        return {k: v for k, v in out.items() if v}

    total = Fraction(0)
    power = X
    for t in range(1, len(mu) + 1):
        total += Fraction((-1) ** (t + 1), t) * power.get((mu, m), Fraction(0))
        if t < len(mu):
            power = mul(power, X)
    return total


def connected_hurwitz(p: Profile) -> Fraction:
    """h_{g,r;k} with labelled parts; 0 (and a warning) for invalid profiles."""
    if not p.valid:
        log.warning("profile %s has non-integral m=%s; returning 0", p, p.m_fraction)
        return Fraction(0)
    m = p.m
    return automorphism_count(p.k) * factorial(m) * connected_coefficient(p.r, p.mu, m)


# ---------------------------------------------------------------------------
# brute-force oracle

ORACLE_MAX_K = 5
ORACLE_MAX_M = 3


class OracleGuardError(ValueError):
    """Raised when a brute-force request exceeds the resource guard."""


def _cycles(perm: tuple) -> list[tuple]:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j)
            j = perm[j]
        out.append(tuple(c))
    return out


def _cycle_type(perm: tuple) -> tuple:
    return as_partition(len(c) for c in _cycles(perm))


@lru_cache(maxsize=None)
def _factors(r: int, K: int) -> tuple:
    """All (perm, distinguished support, weight) terms of the completed cycle in S_K.

    A term of C_lambda is a permutation of cycle type lambda + 1^(K-|lambda|)
    together with an unordered choice of distinguished cycles of lengths lambda.
    Identical (perm, support) pairs are merged.
    """
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    terms = completed_cycle(r + 1).as_dict()
    for perm in permutations(range(K)):
        cyc = _cycles(perm)
        by_len = defaultdict(list)
        for c in cyc:
            by_len[len(c)].append(c)
        for lam, coeff in terms.items():
            need = Counter(lam)
            if sum(lam) > K:
                continue
            # every non-distinguished cycle must be a fixed point
            if any(len(by_len[j]) < c for j, c in need.items()):
                continue
            if any(len(by_len[j]) != need.get(j, 0) for j in by_len if j > 1):
                continue
            pools = [combinations(by_len[j], c) for j, c in sorted(need.items())]
            for pick in product(*pools):
                support = frozenset(x for group in pick for c in group for x in c)
                acc[(perm, support)] += coeff
    return tuple((p, s, w) for (p, s), w in acc.items() if w)


def _compose(a: tuple, b: tuple) -> tuple:
    return tuple(a[b[i]] for i in range(len(a)))


def _join(blocks: tuple, support: frozenset) -> tuple:
    if not support:
        return blocks
    merged, rest = set(support), []
    for b in blocks:
        if b & support:
            merged |= b
        else:
            rest.append(b)
    return tuple(sorted(rest + [frozenset(merged)], key=min))


@lru_cache(maxsize=None)
def _oracle_pass(r: int, K: int, m: int) -> dict[tuple, Fraction]:
    """{cycle type of product: (1/K!) * weighted count of transitive m-tuples}."""
    start = (tuple(range(K)), tuple(frozenset([i]) for i in range(K)))
    states = {start: Fraction(1)}
    facs = _factors(r, K)
    for _ in range(m):
        nxt: dict[tuple, Fraction] = defaultdict(Fraction)
        for (perm, blocks), w in states.items():
            for fp, support, fw in facs:
                nxt[(_compose(perm, fp), _join(blocks, support))] += w * fw
        states = {k: v for k, v in nxt.items() if v}
    out: dict[tuple, Fraction] = defaultdict(Fraction)
    for (perm, blocks), w in states.items():
        if len(blocks) == 1:
            out[_cycle_type(perm)] += w
    fk = factorial(K)
    return {mu: w / fk for mu, w in out.items() if w}


def brute_force_hurwitz(p: Profile, labeled: bool = False) -> Fraction:
    """Weighted count of transitive completed-cycle factorizations of sigma.

    Averaged over all sigma of cycle type k (i.e. divided by K!).  With
    ``labeled=True`` the cycles of sigma are labelled by the parts of k,
    which multiplies by |Aut k| and matches ``connected_hurwitz``.
    """
    if not p.valid:
        return Fraction(0)
    K, m = p.K, p.m
    if K > ORACLE_MAX_K or m > ORACLE_MAX_M:
        raise OracleGuardError(f"oracle guard: need K <= {ORACLE_MAX_K} and m <= {ORACLE_MAX_M}, "
                               f"got K={K}, m={m}")
    val = _oracle_pass(p.r, K, m).get(p.mu, Fraction(0))
    return val * automorphism_count(p.k) if labeled else val


def oracle_profiles(max_K: int = ORACLE_MAX_K, max_m: int = ORACLE_MAX_M,
                    rs: Iterable[int] = (1, 2, 3, 4)) -> list[Profile]:
    out = []
    for r in rs:
        for K in range(1, max_K + 1):
            for mu in partitions(K):
                for m in range(max_m + 1):
                    prof = Profile.from_m(r, mu, m)
                    if prof is not None:
                        out.append(prof)
    return out


def oracle_comparison(max_K: int = ORACLE_MAX_K, max_m: int = ORACLE_MAX_M,
                      rs: Iterable[int] = (1, 2, 3, 4)) -> list[tuple]:
    """(r, mu, m, log-side, oracle-side) for every cell, integral genus or not.

    Both sides are unlabelled: m! [beta^m p_mu] log Z against the oracle pass.
    Cells with non-integral genus must vanish on both sides.
    """
    rows = []
    for r in rs:
        for K in range(1, max_K + 1):
            for m in range(max_m + 1):
                table = _oracle_pass(r, K, m)
                for mu in partitions(K):
                    lhs = factorial(m) * connected_coefficient(r, mu, m)
                    rows.append((r, mu, m, lhs, table.get(mu, Fraction(0))))
    return rows


# ---------------------------------------------------------------------------
# tables

@dataclass
class HurwitzTable:
    """Profile -> value, per provenance ('character' or 'oracle')."""
    entries: dict = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    PROVENANCES = ("character", "oracle")

    def add(self, p: Profile, value: Fraction, provenance: str) -> None:
        if provenance not in self.PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        with self._lock:
            slot = self.entries.setdefault(p, {})
            old = slot.get(provenance)
            if old is not None and old != value:
                raise ValueError(f"conflicting {provenance} values for {p}: {old} vs {value}")
            slot[provenance] = Fraction(value)

    def fill(self, profiles: Iterable[Profile], oracle: bool = False) -> "HurwitzTable":
        for p in profiles:
            self.add(p, connected_hurwitz(p), "character")
            if oracle:
                self.add(p, brute_force_hurwitz(p, labeled=True), "oracle")
        return self

    def disagreements(self) -> list[Profile]:
        return [p for p, s in self.entries.items() if len(set(s.values())) > 1]

    def rows(self) -> list[dict]:
        out = []
        for p in sorted(self.entries, key=lambda q: (q.r, q.g, q.K, q.k)):
            for prov, v in sorted(self.entries[p].items()):
                out.append({"g": p.g, "r": p.r, "k": list(p.k), "m": p.m, "h": str(v),
                            "provenance": prov})
        return out

    def to_json(self) -> str:
        return json.dumps({"schema": "hurwitz-table/1", "rows": self.rows()}, indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["g", "r", "k", "m", "h", "provenance"])
        for row in self.rows():
            w.writerow([row["g"], row["r"], " ".join(map(str, row["k"])), row["m"], row["h"],
                        row["provenance"]])
        return buf.getvalue()


# ---------------------------------------------------------------------------
# KP check
#
# Series in (beta; p_1, p_2, ...) are dicts {(partition, beta power): coeff},
# truncated at p-weight <= W and beta power <= B.

def _series_mul(A: dict, B: dict, W: int, Bmax: int) -> dict:
    out = defaultdict(Fraction)
    for (n1, j1), c1 in A.items():
        w1 = sum(n1)
        for (n2, j2), c2 in B.items():
            if w1 + sum(n2) > W or j1 + j2 > Bmax:
                continue
            out[(_merge(n1, n2), j1 + j2)] += c1 * c2
    return {k: v for k, v in out.items() if v}


def _by_weight(S: dict) -> dict[int, dict]:
    out: dict[int, dict] = defaultdict(dict)
    for k, v in S.items():
        out[sum(k[0])][k] = v
    return out


def _series_log(Z: dict, W: int, Bmax: int) -> dict:
    """log Z for Z with constant term 1, via w F_w = w Z_w - sum_u u F_u Z_(w-u)."""
    Zw = _by_weight(Z)
    Fw: dict[int, dict] = {}
    for w in range(1, W + 1):
        acc = defaultdict(Fraction)
        for k, v in Zw.get(w, {}).items():
            acc[k] += w * v
        for u in range(1, w):
            for k, v in _series_mul(Fw[u], Zw.get(w - u, {}), W, Bmax).items():
                acc[k] -= u * v
        Fw[w] = {k: v / w for k, v in acc.items() if v}
    return {k: v for part in Fw.values() for k, v in part.items()}


def default_beta_order(r: int, W: int) -> int:
    """Enough beta-powers to reach genus-0 one-part terms of weight W."""
    return -(-(W + 1) // r)


def hurwitz_free_energy(r: int, W: int, Bmax: int) -> dict:
    """log Z truncated at p-weight W and beta^Bmax."""
    Z = {((), 0): Fraction(1)}
    for K in range(1, W + 1):
        for mu in partitions(K):
            for j in range(Bmax + 1):
                c = disconnected_coefficient(r, mu, j) / factorial(j)
                if c:
                    Z[(mu, j)] = c
    return _series_log(Z, W, Bmax)


def _d_p(F: dict, k: int, scale: int) -> dict:
    """scale * d/dp_k."""
    out = defaultdict(Fraction)
    for (mu, j), c in F.items():
        mult = mu.count(k)
        if mult:
            nu = list(mu)
            nu.remove(k)
            out[(tuple(nu), j)] += c * mult * scale
    return dict(out)


@dataclass(frozen=True)
class KPConvention:
    """Which times the KP equation is written in, and sign of the quadratic term."""
    times: str = "t"         # 't': t_k = p_k / k ; 'p': p_k themselves
    quad_sign: int = 1

    def describe(self) -> str:
        t = "t_k = p_k/k" if self.times == "t" else "t_k = p_k"
        s = "+" if self.quad_sign > 0 else "-"
        return f"F_1111 {s} 6 F_11^2 + 3 F_22 - 4 F_13 = 0 in {t}"


KP_CANDIDATES = tuple(KPConvention(t, s) for t in ("t", "p") for s in (1, -1))


def kp_residual_series(F: dict, W: int, Bmax: int, conv: KPConvention) -> dict:
    """First KP equation applied to F; valid through p-weight W - 4."""
    def d(G, k):
        return _d_p(G, k, k if conv.times == "t" else 1)

    F1 = d(F, 1)
    F11 = d(F1, 1)
    F1111 = d(d(F11, 1), 1)
    F22 = d(d(F, 2), 2)
    F13 = d(F1, 3)
    res = defaultdict(Fraction)
    for k, v in F1111.items():
        res[k] += v
    for k, v in _series_mul(F11, F11, W - 4, Bmax).items():
        res[k] += 6 * conv.quad_sign * v
    for k, v in F22.items():
        res[k] += 3 * v
    for k, v in F13.items():
        res[k] -= 4 * v
    return {k: v for k, v in res.items() if v and sum(k[0]) <= W - 4}


@dataclass
class KPReport:
    r: int
    degree_bound: int
    beta_order: int
    convention: str
    residual: Fraction
    nonzero_terms: int
    calibration: dict

    @property
    def ok(self) -> bool:
        return self.residual == 0

    def to_dict(self) -> dict:
        return {"schema": "kp-report/1", "r": self.r, "degree_bound": self.degree_bound,
                "beta_order": self.beta_order, "convention": self.convention,
                "residual": str(self.residual), "nonzero_terms": self.nonzero_terms,
                "calibration": self.calibration, "ok": self.ok}


def _max_abs(res: dict) -> Fraction:
    return max((abs(v) for v in res.values()), default=Fraction(0))


@lru_cache(maxsize=None)
def calibrate_kp(degree_bound: int = 4, beta_order: int | None = None) -> tuple[KPConvention, dict]:
    """Pick the convention under which 1, exp(p_1) and the r = 1 series all solve KP."""
    W = degree_bound + 4
    if beta_order is None:
        beta_order = default_beta_order(1, W)
    samples = {
        "tau=1": {},
        "tau=exp(p1)": {((1,), 0): Fraction(1)},
        "r=1 hurwitz": hurwitz_free_energy(1, W, beta_order),
    }
    table, chosen = {}, []
    for conv in KP_CANDIDATES:
        row = {name: str(_max_abs(kp_residual_series(F, W, beta_order, conv)))
               for name, F in samples.items()}
        table[conv.describe()] = row
        if all(v == "0" for v in row.values()):
            chosen.append(conv)
    if len(chosen) != 1:
        raise RuntimeError(f"KP calibration is not unique: {[c.describe() for c in chosen]}")
    return chosen[0], table


def kp_residual(r: int, degree_bound: int = 5, beta_order: int | None = None,
                convention: KPConvention | None = None) -> KPReport:
    """Residual of the first KP equation for log Z, through p-weight ``degree_bound``."""
    calib = {}
    if convention is None:
        convention, calib = calibrate_kp()
    W = degree_bound + 4
    if beta_order is None:
        beta_order = default_beta_order(r, W)
    F = hurwitz_free_energy(r, W, beta_order)
    res = kp_residual_series(F, W, beta_order, convention)
    return KPReport(r, degree_bound, beta_order, convention.describe(), _max_abs(res),
                    len(res), calib)
