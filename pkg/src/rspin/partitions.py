"""Partitions, symmetric group characters, stable center elements and
completed cycles.

Partitions are plain non-increasing tuples of positive ints.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from pathlib import Path

from .exact import solve_linear

Partition = tuple


def as_partition(parts) -> Partition:
    p = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x <= 0 for x in p):
        raise ValueError(f"parts must be positive: {parts!r}")
    return p


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def multiplicities(mu: Partition) -> Counter:
    return Counter(mu)


def automorphism_count(mu) -> int:
    """prod of factorials of part multiplicities."""
    return prod(factorial(m) for m in Counter(mu).values())


def z_mu(mu: Partition) -> int:
    """Centralizer order prod_i i^{m_i} m_i!."""
    return prod(i ** m * factorial(m) for i, m in Counter(mu).items())


def class_size(mu: Partition) -> int:
    """|C_mu| = K! / z_mu."""
    return factorial(sum(mu)) // z_mu(mu)


def hook_lengths(lam: Partition) -> list[int]:
    conj = conjugate(lam)
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def conjugate(lam: Partition) -> Partition:
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0])) if lam else ()


@lru_cache(maxsize=None)
def dimension(lam: Partition) -> int:
    """dim rho_lambda by the hook-length formula."""
    return factorial(sum(lam)) // prod(hook_lengths(lam))


def _beta_set(lam: Partition) -> tuple[int, ...]:
    n = len(lam)
    return tuple(lam[i] + n - 1 - i for i in range(n))


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], mu: Partition) -> int:
    # Murnaghan-Nakayama on beta-numbers: removing a k-rim hook moves a bead from b to b-k
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        t = b - k
        if t < 0 or t in beads:
            continue
        sign = -1 if sum(1 for c in beta if t < c < b) % 2 else 1
        new = tuple(sorted((beads - {b}) | {t}, reverse=True))
        total += sign * _mn(new, rest)
    return total


def irreducible_character(lam, mu) -> int:
    """chi_lambda evaluated on the class of cycle type mu."""
    lam, mu = as_partition(lam), as_partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    if not lam:
        return 1
    return _mn(_beta_set(lam), mu)


def shifted_power_sum(s: int, mu) -> Fraction:
    """p_s(mu) = (1/s) sum_i [(mu_i - i + 1/2)^s - (-i + 1/2)^s]."""
    if s < 1:
        raise ValueError("s must be positive")
    half = Fraction(1, 2)
    total = sum(((m - i + half) ** s - (-i + half) ** s for i, m in enumerate(mu, start=1)),
                Fraction(0))
    return total / s


def stable_central_character(lam, mu) -> Fraction:
    """f_lambda(mu): the scalar by which C_{|mu|, lambda} acts on rho_mu."""
    lam, mu = as_partition(lam), as_partition(mu)
    p, q = sum(mu), sum(lam)
    if p < q:
        return Fraction(0)
    nu = as_partition(lam + (1,) * (p - q))
    m_nu, m_lam = Counter(nu), Counter(lam)
    # ways to pick the distinguished cycles of a fixed sigma of type nu;
    # cycles of equal length are not ordered among themselves
    ways = prod(comb(m_nu[j], m_lam[j]) for j in m_lam)
    return Fraction(ways * class_size(nu) * irreducible_character(mu, nu), dimension(mu))


@dataclass(frozen=True)
class StableCenterTerm:
    lam: Partition
    coefficient: Fraction
    r: int

    @property
    def genus_defect(self) -> Fraction:
        return Fraction(self.r + 2 - sum(x + 1 for x in self.lam), 2)


@dataclass(frozen=True)
class CompletedCycle:
    r_plus_1: int
    terms: tuple[StableCenterTerm, ...]

    def as_dict(self) -> dict[Partition, Fraction]:
        return {t.lam: t.coefficient for t in self.terms}

    def eigenvalue(self, mu) -> Fraction:
        """Sum_lambda c_lambda f_lambda(mu)."""
        return sum((t.coefficient * stable_central_character(t.lam, mu) for t in self.terms),
                   Fraction(0))

    def __str__(self):
        def fmt(t):
            name = "C_{" + ",".join(map(str, t.lam)) + "}"
            return name if t.coefficient == 1 else f"{t.coefficient} {name}"
        return " + ".join(fmt(t) for t in self.terms)


@lru_cache(maxsize=None)
def completed_cycle(r_plus_1: int) -> CompletedCycle:
    """Expand p_{r+1} in the stable center basis C_lambda, |lambda| <= r+1.

    f_lambda(mu) vanishes for |mu| < |lambda|, so the system is block
    triangular by size: each block is solved against the partitions of that
    size after subtracting the contributions already fixed.
    """
    if r_plus_1 < 1:
        raise ValueError("r_plus_1 must be positive")
    coeffs: dict[Partition, Fraction] = {}
    for size in range(r_plus_1 + 1):
        lams = partitions(size)
        mus = partitions(size)
        rhs = []
        for mu in mus:
            known = sum((c * stable_central_character(l, mu) for l, c in coeffs.items()), Fraction(0))
            rhs.append(shifted_power_sum(r_plus_1, mu) - known)
        mat = [[stable_central_character(l, mu) for l in lams] for mu in mus]
        try:
            sol = solve_linear(mat, rhs)
        except ZeroDivisionError as exc:  # pragma: no cover - would be a bug
            raise RuntimeError(f"singular block at size {size}") from exc
        for l, c in zip(lams, sol):
            if c:
                coeffs[l] = c
    order = sorted(coeffs, key=lambda l: (-sum(l), [-x for x in l]))
    terms = tuple(StableCenterTerm(l, coeffs[l], r_plus_1 - 1) for l in order)
    return CompletedCycle(r_plus_1, terms)


# ---------------------------------------------------------------------------
# optional on-disk character tables

CHARACTER_CACHE_VERSION = 1


def character_table(k: int) -> dict[tuple[Partition, Partition], int]:
    return {(l, m): irreducible_character(l, m) for l in partitions(k) for m in partitions(k)}


def save_character_table(k: int, path: Path) -> None:
    table = character_table(k)
    payload = {
        "version": CHARACTER_CACHE_VERSION,
        "K": k,
        "entries": [[list(l), list(m), v] for (l, m), v in sorted(table.items())],
    }
    Path(path).write_text(json.dumps(payload))


def load_character_table(path: Path) -> dict[tuple[Partition, Partition], int]:
    payload = json.loads(Path(path).read_text())
    if payload.get("version") != CHARACTER_CACHE_VERSION:
        raise ValueError(f"character cache {path} has format version {payload.get('version')}, "
                         f"expected {CHARACTER_CACHE_VERSION}")
    return {(tuple(l), tuple(m)): v for l, m, v in payload["entries"]}
