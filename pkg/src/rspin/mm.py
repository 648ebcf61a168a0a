"""Matrix-model side: the A_{r+1} polynomials, Schur polynomials and the
finite-sum form of the completed-cycle partition function.

Both sides of the t^K comparison are computed as truncated Laurent data in
g_s whose coefficients are polynomials in v_1..v_N (the p_k = g_s sum v_i^k
substitution absorbs the g_s^{-l(mu)} factor, so no g_s appears inside the
polynomials).
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial, prod

from .exact import MPoly, bernoulli_number
from .partitions import (as_partition, class_size, dimension, irreducible_character,
                         partitions, shifted_power_sum)

REPORT_SCHEMA = "mm-report/1"
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class APoly:
    """A_{r+1}(x) for a fixed N; ``coeffs[j]`` is the coefficient of x^j."""
    r: int
    N: int
    coeffs: tuple

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        return sum((c * x ** j for j, c in enumerate(self.coeffs)), Fraction(0))


def _a_coeffs(s: int, N: int) -> tuple:
    # s = r + 1; Bernoulli tail is the closed form of sum_j ((1 - 2j)/2)^s
    r = s - 1
    c = [Fraction(0)] * (s + 1)
    shift = Fraction(-N) + HALF
    for k in range(s + 1):
        c[s - k] += Fraction(factorial(r), factorial(k) * factorial(s - k)) * shift ** k
        two = Fraction(2) ** (k - 1)
        c[0] += ((-1) ** s * factorial(r) * (-1) ** k * bernoulli_number(k) / factorial(k)
                 * (two - 1) / two * Fraction(N) ** (s - k) / factorial(s + 1 - k))
    return tuple(c)


def a_polynomial(r: int, N: int) -> APoly:
    if r < 1 or N < 1:
        raise ValueError("need r >= 1 and N >= 1")
    return APoly(r, N, _a_coeffs(r + 1, N))


def a_one(N: int) -> APoly:
    """A_1 from the same formula; equals x - (N-1)/2."""
    if N < 1:
        raise ValueError("need N >= 1")
    return APoly(0, N, _a_coeffs(1, N))


def h_tuple(lam, N: int) -> tuple:
    lam = as_partition(lam)
    if len(lam) > N:
        raise ValueError(f"length of {lam} exceeds N={N}")
    lam = lam + (0,) * (N - len(lam))
    return tuple(lam[i] - (i + 1) + N for i in range(N))


def a_identity_check(r: int, N: int, lam) -> bool:
    """sum_i A_{r+1}(h_i) == shifted_power_sum(r+1, lambda)."""
    A = a_polynomial(r, N)
    lhs = sum((A(h) for h in h_tuple(lam, N)), Fraction(0))
    rhs = shifted_power_sum(r + 1, as_partition(lam)) if lam else Fraction(0)
    return lhs == rhs


def random_a_instances(count: int = 50, seed: int = 0, max_r: int = 4, max_N: int = 6,
                       max_size: int = 8) -> list[tuple]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        r, N, size = rng.randint(1, max_r), rng.randint(1, max_N), rng.randint(0, max_size)
        lams = [l for l in partitions(size) if len(l) <= N]
        if lams:
            out.append((r, N, rng.choice(lams)))
    return out


# ---------------------------------------------------------------------------
# Schur polynomials

def _sign(perm) -> int:
    s, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        s *= -1 if length % 2 == 0 else 1
    return s


def monomial_det(exps, N: int) -> MPoly:
    """det(v_i^{e_j})_{i,j} as a polynomial in v_1..v_N."""
    terms: dict = {}
    for perm in permutations(range(N)):
        e = tuple(exps[perm[i]] for i in range(N))
        terms[e] = terms.get(e, Fraction(0)) + _sign(perm)
    return MPoly(N, terms)


@lru_cache(maxsize=None)
def _vandermonde_v(N: int) -> MPoly:
    # det(v_i^{N-j}); same sign convention as the numerator below
    return monomial_det(tuple(N - 1 - j for j in range(N)), N)


def schur_poly(lam, N: int) -> MPoly:
    lam = as_partition(lam) if lam else ()
    h = h_tuple(lam, N)
    return monomial_det(h, N).exact_div(_vandermonde_v(N))


def power_sum_poly(k: int, N: int) -> MPoly:
    return sum((MPoly.var(N, i, k) for i in range(N)), MPoly(N))


def frobenius_schur(lam, N: int) -> MPoly:
    """(1/K!) sum_mu |C_mu| chi_lambda(mu) p~_mu."""
    lam = as_partition(lam)
    K = sum(lam)
    out = MPoly(N)
    for mu in partitions(K):
        c = Fraction(class_size(mu) * irreducible_character(lam, mu), factorial(K))
        if c:
            out = out + prod((power_sum_poly(k, N) for k in mu), start=MPoly.const(N, 1)) * c
    return out


def vandermonde_int(h) -> int:
    """prod_{i<j} (h_i - h_j)."""
    return prod((h[i] - h[j] for i in range(len(h)) for j in range(i + 1, len(h))), start=1)


def dim_identity(lam, N: int) -> bool:
    h = h_tuple(lam, N)
    lam = as_partition(lam) if lam else ()
    return Fraction(dimension(lam), factorial(sum(lam))) == Fraction(
        vandermonde_int(h), prod(factorial(x) for x in h))


# ---------------------------------------------------------------------------
# t^K coefficients

@dataclass
class ZCoefficient:
    """Truncated Laurent series in g_s: ``terms[power]`` is an MPoly in v."""
    K: int
    N: int
    gs_order: int
    terms: dict = field(default_factory=dict)

    def add(self, power: int, poly: MPoly) -> None:
        if power > self.gs_order or poly.is_zero():
            return
        cur = self.terms.get(power, MPoly(self.N)) + poly
        if cur.is_zero():
            self.terms.pop(power, None)
        else:
            self.terms[power] = cur

    @property
    def lowest(self):
        return min(self.terms) if self.terms else None

    def first_difference(self, other: "ZCoefficient"):
        for p in sorted(set(self.terms) | set(other.terms)):
            a, b = self.terms.get(p, MPoly(self.N)), other.terms.get(p, MPoly(other.N))
            diff = a - b
            if not diff.is_zero():
                mono = min(diff.terms)
                return p, mono
        return None

    def __eq__(self, other):
        return isinstance(other, ZCoefficient) and self.first_difference(other) is None

    def to_dict(self) -> dict:
        return {str(p): {",".join(map(str, e)): str(c) for e, c in sorted(poly.terms.items())}
                for p, poly in sorted(self.terms.items())}


def _exp_terms(value: Fraction, r: int, base_power: int, gs_order: int):
    # exp(g_s^r value) * g_s^base_power, truncated
    m = 0
    while base_power + r * m <= gs_order:
        yield base_power + r * m, value ** m / factorial(m)
        m += 1


def z_coefficient_character(K: int, N: int, r: int, gs_order: int) -> ZCoefficient:
    if N <= K:
        raise ValueError(f"need N > K (got N={N}, K={K})")
    out = ZCoefficient(K, N, gs_order)
    for lam in partitions(K):
        s = schur_poly(lam, N)
        w = Fraction(dimension(lam), factorial(K))
        e = shifted_power_sum(r + 1, lam) if lam else Fraction(0)
        for power, c in _exp_terms(e, r, -K, gs_order):
            out.add(power, s * (w * c))
    return out


def minimal_d(K: int, N: int) -> int:
    """Smallest integer D with D > K + (N-1)/2 (the stated truncation bound)."""
    return K + (N - 1) // 2 + 1


def sufficient_d(K: int, N: int) -> int:
    """Largest h_1 = lambda_1 + N - 1 over |lambda| = K; the sum over [0, D]^N
    misses the lambda = (K) term below this."""
    return K + N - 1


@lru_cache(maxsize=None)
def _tuple_weight(h_sorted: tuple, N: int) -> MPoly:
    # det(v_j^{h_i}) Delta(h) / Delta(v): symmetric in the order of h
    num = monomial_det(h_sorted, N).exact_div(_vandermonde_v(N))
    return num * vandermonde_int(h_sorted)


def z_coefficient_finite_sum(K: int, N: int, D: int, r: int, gs_order: int) -> ZCoefficient:
    if N <= K:
        raise ValueError(f"need N > K (got N={N}, K={K})")
    if not D > K + Fraction(N - 1, 2):
        raise ValueError(f"need D > K + (N-1)/2 (got D={D})")
    A, A1 = a_polynomial(r, N), a_one(N)
    out = ZCoefficient(K, N, gs_order)
    acc: dict = {}
    for h in product(range(D + 1), repeat=N):
        if len(set(h)) < N:
            assert vandermonde_int(h) == 0
            continue
        # (g_s/t)^{-A_1(h_i)}: half-integer per entry, integral in total
        expo = sum((-A1(x) for x in h), Fraction(0))
        assert expo.denominator == 1, h
        if -expo != K:       # t-power is -expo
            continue
        key = tuple(sorted(h, reverse=True))
        a_sum = sum((A(x) for x in h), Fraction(0))
        w = Fraction(1, factorial(N) * prod(factorial(x) for x in h))
        for power, c in _exp_terms(a_sum, r, int(expo), gs_order):
            acc[(key, power)] = acc.get((key, power), Fraction(0)) + w * c
    for (key, power), c in sorted(acc.items()):
        out.add(power, _tuple_weight(key, N) * c)
    return out


@dataclass
class MMCheck:
    K: int
    N: int
    D: int
    r: int
    gs_order: int
    ok: bool
    first_difference: tuple | None = None

    def to_dict(self) -> dict:
        d = {"K": self.K, "N": self.N, "D": self.D, "r": self.r, "gs_order": self.gs_order,
             "verdict": "PASS" if self.ok else "FAIL"}
        if self.first_difference is not None:
            p, mono = self.first_difference
            d["first_difference"] = {"gs_power": p, "monomial": list(mono)}
        return d


def theorem_check(K: int, N: int, r: int, gs_order: int | None = None, D: int | None = None) -> MMCheck:
    gs_order = 3 * r if gs_order is None else gs_order
    D = minimal_d(K, N) if D is None else D
    lhs = z_coefficient_character(K, N, r, gs_order)
    rhs = z_coefficient_finite_sum(K, N, D, r, gs_order)
    return MMCheck(K, N, D, r, gs_order, lhs == rhs, lhs.first_difference(rhs))


def mm_report(max_K: int = 3, rs=(1, 2), seed: int = 0, a_count: int = 50) -> dict:
    inst = random_a_instances(a_count, seed)
    a_fail = [list(map(lambda x: x if isinstance(x, int) else list(x), i))
              for i in inst if not a_identity_check(*i)]
    cells = [(K, N, r) for r in rs for K in range(max_K + 1) for N in (K + 1, K + 2)]
    stated = [theorem_check(K, N, r).to_dict() for K, N, r in cells]
    safe = [theorem_check(K, N, r, D=max(minimal_d(K, N), sufficient_d(K, N))).to_dict()
            for K, N, r in cells]
    return {
        "schema": REPORT_SCHEMA,
        "seed": seed,
        "a_identity": {"instances": len(inst), "failures": a_fail},
        "coefficient_checks": stated,
        "coefficient_checks_sufficient_d": safe,
        "ok": not a_fail and all(c["verdict"] == "PASS" for c in stated),
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
