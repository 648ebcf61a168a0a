"""The r-spin CohFT as an R-matrix action on its degree-zero part.

Everything here lives in the flat basis e_0..e_{r-1} and is rational.  The
graph sum itself (``GiventalEngine``) is written for an arbitrary
semisimple-looking input (TQFT, metric, leg/edge/dilaton data) so that the
same code evaluates other normalisations, e.g. over CycExt.

Conventions (pinned by the r = 1 Hodge checks and Omega_{0,3} = omega_{0,3}):

* legs carry R^{-1}(psi) e_a, diagonal: rho_a(psi) = exp(+sum B_{k+1}((a+1)/r) psi^k / (k(k+1)));
* edges carry (eta^{-1} - R^{-1}(x) eta^{-1} R^{-1}(y)^t) / (x + y);
* extra points carry the translation T(z) = z (1 - R^{-1}(z)) e_0, with 1/m!.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial, prod
from typing import Callable

from .exact import CycExt, Series, bernoulli_poly
from .hurwitz import Profile
from .psi import psi_intersection


# ---------------------------------------------------------------------------
# degree-zero data

def tqft_value(g: int, a_list, r: int) -> Fraction:
    """omega_{g,n}(a_1..a_n) = r^{2g-1} [2g - 2 - sum a = 0 mod r]."""
    if any(not 0 <= a < r for a in a_list):
        raise ValueError(f"indices must lie in 0..{r - 1}: {a_list!r}")
    if (2 * g - 2 - sum(a_list)) % r:
        return Fraction(0)
    return Fraction(r) ** (2 * g - 1)


@dataclass(frozen=True)
class Metric:
    r: int

    def eta(self, a: int, b: int) -> Fraction:
        return Fraction(1, self.r) if (a + b + 2) % self.r == 0 else Fraction(0)

    def eta_inv(self, a: int, b: int) -> Fraction:
        return Fraction(self.r) if (a + b + 2) % self.r == 0 else Fraction(0)

    def partner(self, a: int) -> int:
        return (-a - 2) % self.r

    def matrix(self) -> list[list[Fraction]]:
        return [[self.eta(a, b) for b in range(self.r)] for a in range(self.r)]


def quantum_product(r: int, a: int, b: int) -> int:
    """e_a . e_b = e_{a+b mod r} (index of the product)."""
    return (a + b) % r


def idempotent(r: int, i: int) -> list[CycExt]:
    """(1/r) sum_a J^{a i} e_a, J = exp(2 pi I / r), as flat coordinates."""
    return [CycExt.zeta(r, a * i) * Fraction(1, r) for a in range(r)]


def flat_product(r: int, x: list, y: list) -> list:
    out = [CycExt.const(r, 0) for _ in range(r)]
    for a in range(r):
        for b in range(r):
            out[quantum_product(r, a, b)] = out[quantum_product(r, a, b)] + x[a] * y[b]
    return out


# ---------------------------------------------------------------------------
# R-matrix

@lru_cache(maxsize=None)
def _log_r(r: int, a: int, order: int) -> tuple:
    u = Fraction(a + 1, r)
    return tuple([Fraction(0)] + [-bernoulli_poly(k + 1, u) / (k * (k + 1)) for k in range(1, order)])


@lru_cache(maxsize=None)
def r_series(r: int, a: int, order: int, inverse: bool = False) -> Series:
    """(a,a) entry of R(z) (or R^{-1}(z)) modulo z^order."""
    lg = Series(_log_r(r, a, order), order)
    return (-lg).exp() if inverse else lg.exp()


def r_matrix_coefficient(r: int, a: int, k: int) -> Fraction:
    """[z^k] R(z)_{aa}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return r_series(r, a, k + 1)[k]


def symplectic_defect(r: int, order: int) -> list[tuple[int, int]]:
    """(a, k) where R(z) eta^{-1} R(-z)^t differs from eta^{-1} at z^k."""
    bad = []
    met = Metric(r)
    for a in range(r):
        b = met.partner(a)
        prod_ = r_series(r, a, order) * r_series(r, b, order).scale_var(-1)
        for k in range(order):
            if prod_[k] != (1 if k == 0 else 0):
                bad.append((a, k))
    return bad


# ---------------------------------------------------------------------------
# stable graphs

@dataclass(frozen=True)
class StableGraph:
    """genera[v]; edges as sorted (u, v) pairs (u == v for loops); legs[i] = vertex of leg i+1."""
    genera: tuple
    edges: tuple
    legs: tuple

    @property
    def genus(self) -> int:
        V, E = len(self.genera), len(self.edges)
        return sum(self.genera) + E - V + 1

    def valence(self, v: int) -> int:
        return (sum(1 for l in self.legs if l == v)
                + sum((a == v) + (b == v) for a, b in self.edges))

    def is_stable(self) -> bool:
        return all(2 * g - 2 + self.valence(v) > 0 for v, g in enumerate(self.genera))

    def _relabel(self, perm) -> tuple:
        inv = {old: new for new, old in enumerate(perm)}
        gen = tuple(self.genera[old] for old in perm)
        edges = tuple(sorted(tuple(sorted((inv[a], inv[b]))) for a, b in self.edges))
        legs = tuple(inv[l] for l in self.legs)
        return gen, edges, legs

    def canonical(self) -> "StableGraph":
        best = min(self._relabel(p) for p in permutations(range(len(self.genera))))
        return StableGraph(*best)

    def automorphisms(self) -> int:
        base = self._relabel(tuple(range(len(self.genera))))
        count = sum(1 for p in permutations(range(len(self.genera))) if self._relabel(p) == base)
        mult = defaultdict(int)
        for e in self.edges:
            mult[e] += 1
        for (a, b), c in mult.items():
            count *= factorial(c) * (2 ** c if a == b else 1)
        return count


def _degenerations(G: StableGraph):
    for v, gv in enumerate(G.genera):
        if gv > 0:
            yield StableGraph(G.genera[:v] + (gv - 1,) + G.genera[v + 1:],
                              G.edges + ((v, v),), G.legs)
        # split v into v and a new vertex w; distribute half-edges at v
        halves = [("leg", i) for i, l in enumerate(G.legs) if l == v]
        for j, (a, b) in enumerate(G.edges):
            if a == v:
                halves.append(("e0", j))
            if b == v:
                halves.append(("e1", j))
        w = len(G.genera)
        for g1 in range(gv + 1):
            for size in range(len(halves) + 1):
                for moved in combinations(range(len(halves)), size):
                    genera = G.genera[:v] + (g1,) + G.genera[v + 1:] + (gv - g1,)
                    legs = list(G.legs)
                    edges = [list(e) for e in G.edges]
                    for h in moved:
                        kind, idx = halves[h]
                        if kind == "leg":
                            legs[idx] = w
                        else:
                            edges[idx][0 if kind == "e0" else 1] = w
                    edges = [tuple(sorted(e)) for e in edges] + [(v, w)]
                    H = StableGraph(genera, tuple(edges), tuple(legs))
                    if H.is_stable():
                        yield H


@lru_cache(maxsize=None)
def stable_graphs(g: int, n: int) -> tuple[StableGraph, ...]:
    """All stable graphs of genus g with n labelled legs, up to isomorphism."""
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"unstable (g, n) = ({g}, {n})")
    if 3 * g - 3 + n > 5:
        raise ValueError("graph enumeration is limited to 3g - 3 + n <= 5")
    start = StableGraph((g,), (), (0,) * n).canonical()
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for G in frontier:
            for H in _degenerations(G):
                c = H.canonical()
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return tuple(sorted(seen, key=lambda G: (len(G.edges), G.genera, G.edges, G.legs)))


# ---------------------------------------------------------------------------
# generic graph sum

def divide_by_sum(num: dict, zero=Fraction(0)) -> dict:
    """Q with (x + y) Q = num, for num a dict {(i, j): c} vanishing on y = -x."""
    by_deg = defaultdict(dict)
    for (i, j), c in num.items():
        by_deg[i + j][i] = c
    out = {}
    for t, row in by_deg.items():
        if t == 0:
            if row.get(0, zero) != 0:
                raise ArithmeticError("numerator has a constant term")
            continue
        q = zero
        for i in range(t):
            # coefficient of x^i y^(t-i) in (x+y)Q is q_{i-1} + q_i
            q = row.get(i, zero) - q
            if q != 0:
                out[(i, t - 1 - i)] = q
        if row.get(t, zero) != q:
            raise ArithmeticError(f"numerator not divisible by x + y in degree {t}")
    return out


@dataclass
class GiventalEngine:
    """Stable-graph sum for a CohFT of the form R.T.omega.

    omega(g, indices) -> vertex value (ring element)
    legs[a] = {(b, s): c}: image of e_a on a leg, c psi^s e_b
    edge = {(a, b, i, j): c}: edge bivector, c x^i y^j e_a (x) e_b
    dilaton = {(b, s): c} with s >= 2: translation on extra points
    """
    omega: Callable
    legs: dict
    edge: dict
    dilaton: dict
    zero: object = Fraction(0)
    _vcache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if any(s < 2 for _, s in self.dilaton):
            raise ValueError("dilaton terms must start at psi^2")

    def vertex(self, g: int, items: tuple):
        """sum_m 1/m! int_{M_{g,n+m}} omega(...) prod psi powers prod T(psi)."""
        items = tuple(sorted(items))
        key = (g, items)
        hit = self._vcache.get(key)
        if hit is not None:
            return hit
        n = len(items)
        idx = [a for a, _ in items]
        pw = [s for _, s in items]
        slack = 3 * g - 3 + n - sum(pw)
        total = self.zero
        if slack >= 0:
            dil = sorted(self.dilaton.items())
            for m in range(slack + 1):
                if m == 0:
                    if slack == 0:
                        w = self.omega(g, tuple(idx))
                        if w != 0:
                            total = total + w * psi_intersection(g, pw)
                    continue
                acc = self.zero
                for choice in product(dil, repeat=m):
                    if sum(s for (_, s), _ in choice) - m != slack:
                        continue
                    w = self.omega(g, tuple(idx + [b for (b, _), _ in choice]))
                    if w == 0:
                        continue
                    ints = psi_intersection(g, pw + [s for (_, s), _ in choice])
                    if ints == 0:
                        continue
                    c = w * ints
                    for _, cc in choice:
                        c = c * cc
                    acc = acc + c
                total = total + acc * Fraction(1, factorial(m))
        self._vcache[key] = total
        return total

    def graph_contribution(self, G: StableGraph, pairs):
        V = len(G.genera)
        budget = [3 * G.genera[v] - 3 + G.valence(v) for v in range(V)]
        # each slot: (vertex or vertex pair, candidate list)
        slots = []
        for i, (a, d) in enumerate(pairs):
            slots.append(("leg", G.legs[i],
                          [(((b, d + s),), c) for (b, s), c in self.legs[a].items()]))
        for (u, v) in G.edges:
            slots.append(("edge", (u, v),
                          [(((a, i), (b, j)), c) for (a, b, i, j), c in self.edge.items()]))
        slots_sorted = slots  # legs then edges, fixed order => deterministic sums
        items = [[] for _ in range(V)]
        used = [0] * V
        total = self.zero

        def rec(t, coef):
            nonlocal total
            if t == len(slots_sorted):
                val = coef
                for v in range(V):
                    x = self.vertex(G.genera[v], tuple(items[v]))
                    if x == 0:
                        return
                    val = val * x
                total = total + val
                return
            kind, where, cands = slots_sorted[t]
            for halves, c in cands:
                if kind == "leg":
                    verts = (where,)
                else:
                    verts = where
                ok = True
                for vtx, (_, s) in zip(verts, halves):
                    used[vtx] += s
                    if used[vtx] > budget[vtx]:
                        ok = False
                if ok:
                    for vtx, h in zip(verts, halves):
                        items[vtx].append(h)
                    rec(t + 1, coef * c)
                    for vtx in verts:
                        items[vtx].pop()
                for vtx, (_, s) in zip(verts, halves):
                    used[vtx] -= s

        rec(0, Fraction(1))
        return total * Fraction(1, G.automorphisms())

    def correlator(self, g: int, pairs):
        pairs = [tuple(p) for p in pairs]
        total = self.zero
        for G in stable_graphs(g, len(pairs)):
            total = total + self.graph_contribution(G, pairs)
        return total


# ---------------------------------------------------------------------------
# r-spin instance

@lru_cache(maxsize=None)
def rspin_engine(r: int, order: int = 6) -> GiventalEngine:
    """Engine for the r-spin classes, R-series kept modulo z^order."""
    met = Metric(r)
    rho = [r_series(r, a, order, inverse=True) for a in range(r)]
    legs = {a: {(a, s): rho[a][s] for s in range(order) if rho[a][s]} for a in range(r)}
    edge = {}
    for a in range(r):
        b = met.partner(a)
        num = {}
        for i in range(order):
            for j in range(order - i):
                c = (1 if i == j == 0 else 0) - rho[a][i] * rho[b][j]
                if c:
                    num[(i, j)] = met.eta_inv(a, b) * c
        for (i, j), c in divide_by_sum(num).items():
            if i + j < order - 1:
                edge[(a, b, i, j)] = c
    dilaton = {(0, s + 1): -rho[0][s] for s in range(1, order - 1) if rho[0][s]}
    return GiventalEngine(lambda g, idx: tqft_value(g, idx, r), legs, edge, dilaton)


def givental_correlator(g: int, pairs, r: int):
    """int Omega_{g,n}(a_1..a_n) prod psi_i^{d_i} by the graph sum."""
    pairs = [(int(a), int(d)) for a, d in pairs]
    n = len(pairs)
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"unstable (g, n) = ({g}, {n})")
    if any(not 0 <= a < r for a, _ in pairs):
        raise ValueError("flat indices out of range")
    dim = 3 * g - 3 + n
    if sum(d for _, d in pairs) > dim:
        return Fraction(0)
    return rspin_engine(r, dim + 2).correlator(g, sorted(pairs))


# ---------------------------------------------------------------------------
# f-numbers and the n-point function

def _check_profile(p: Profile) -> None:
    if 2 * p.g - 2 + p.n <= 0:
        raise ValueError(f"unstable (g, n) = ({p.g}, {p.n}); f is not defined there")
    if not p.valid:
        raise ValueError(f"{p} has non-integral m = {p.m_fraction}")


def _d_vectors(n: int, total: int):
    """All d in N^n with sum(d) <= total."""
    if n == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _d_vectors(n - 1, total - first):
            yield (first,) + rest


def f_number(p: Profile) -> Fraction:
    """m! r^{m+n+2g-2} prod (k/r)^p/p! * int Omega prod 1/(1 - k psi / r)."""
    _check_profile(p)
    r, g, n, m = p.r, p.g, p.n, p.m
    pa = p.parts
    pref = factorial(m) * Fraction(r) ** (m + n + 2 * g - 2)
    for ki, (pi, _) in zip(p.k, pa):
        pref *= Fraction(ki, r) ** pi / factorial(pi)
    total = Fraction(0)
    for d in _d_vectors(n, 3 * g - 3 + n):
        c = givental_correlator(g, [(a, di) for (_, a), di in zip(pa, d)], r)
        if c:
            total += c * prod(Fraction(ki, r) ** di for ki, di in zip(p.k, d))
    return pref * total


def F_coefficient_resummed(p: Profile) -> Fraction:
    """sum_d r^{2g+2n-2+(2g-2-sum a)/r-sum d} prod k^{p+d}/p! <prod tau^a_d>."""
    _check_profile(p)
    r, g, n = p.r, p.g, p.n
    pa = p.parts
    sa = sum(a for _, a in pa)
    shift = Fraction(2 * g - 2 - sa, r)
    if shift.denominator != 1:
        return Fraction(0)
    total = Fraction(0)
    for d in _d_vectors(n, 3 * g - 3 + n):
        c = givental_correlator(g, [(a, di) for (_, a), di in zip(pa, d)], r)
        if not c:
            continue
        e = 2 * g + 2 * n - 2 + int(shift) - sum(d)
        w = Fraction(r) ** e
        for ki, (pi, _), di in zip(p.k, pa, d):
            w *= Fraction(ki ** (pi + di), factorial(pi))
        total += w * c
    return total


class ConventionMismatch(AssertionError):
    pass


def F_coefficient(g: int, r: int, k_list) -> Fraction:
    """f/m!, computed directly and by the resummed formula; they must agree."""
    p = Profile(g, r, tuple(k_list))
    direct = f_number(p) / factorial(p.m)
    resummed = F_coefficient_resummed(p)
    if direct != resummed:
        raise ConventionMismatch(f"F coefficient mismatch at {p}: {direct} vs {resummed}")
    return direct


@dataclass
class CorrelatorTable:
    r: int
    values: dict = field(default_factory=dict)

    def get(self, g: int, pairs) -> Fraction:
        key = (g, tuple(sorted(tuple(x) for x in pairs)))
        if key not in self.values:
            self.values[key] = givental_correlator(g, key[1], self.r)
        return self.values[key]

    def fill(self, g: int, n: int) -> "CorrelatorTable":
        dim = 3 * g - 3 + n
        seen = set()
        for a in product(range(self.r), repeat=n):
            for d in _d_vectors(n, dim):
                key = tuple(sorted(zip(a, d)))
                if key not in seen:
                    seen.add(key)
                    self.get(g, key)
        return self

    def to_json(self) -> str:
        rows = [{"g": g, "r": self.r, "pairs": [list(x) for x in pairs], "value": str(v)}
                for (g, pairs), v in sorted(self.values.items())]
        return json.dumps({"schema": "correlator-table/1", "rows": rows}, indent=1)
