"""Witten-Kontsevich intersection numbers <tau_d1 ... tau_dn>_g.

Computed by the string equation (whenever a tau_0 is present) and the DVV
recursion otherwise.  Values are memoised in-process and can be persisted
to a JSON file.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from .exact import double_factorial

CACHE_VERSION = 1

_memo: dict[tuple[int, tuple], Fraction] = {}
_lock = threading.RLock()


@dataclass(frozen=True)
class PsiIndex:
    g: int
    d: tuple

    @classmethod
    def of(cls, g, d) -> "PsiIndex":
        return cls(int(g), tuple(sorted(int(x) for x in d)))

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def stable(self) -> bool:
        return self.g >= 0 and 2 * self.g - 2 + self.n > 0

    @property
    def on_dimension(self) -> bool:
        return sum(self.d) == 3 * self.g - 3 + self.n


def _unstable(g: int, n: int) -> bool:
    return g < 0 or 2 * g - 2 + n <= 0


def _value(g: int, d: tuple) -> Fraction:
    # d sorted ascending, stable, on dimension
    if any(x < 0 for x in d):
        return Fraction(0)
    if sum(d) != 3 * g - 3 + len(d):
        return Fraction(0)
    if g == 0 and d == (0, 0, 0):
        return Fraction(1)
    if g == 1 and d == (1,):
        return Fraction(1, 24)
    with _lock:
        hit = _memo.get((g, d))
    if hit is not None:
        return hit
    if d[0] == 0:
        rest = d[1:]
        val = sum((_get(g, rest[:j] + (rest[j] - 1,) + rest[j + 1:])
                   for j in range(len(rest)) if rest[j] > 0), Fraction(0))
    else:
        val = _dvv(g, d)
    with _lock:
        _memo[(g, d)] = val
    return val


def _get(g: int, d) -> Fraction:
    d = tuple(sorted(d))
    if _unstable(g, len(d)):
        return Fraction(0)
    return _value(g, d)


def _dvv(g: int, d: tuple) -> Fraction:
    # peel off the largest index: k + 1 = d[-1] >= 1
    k = d[-1] - 1
    S = d[:-1]
    total = Fraction(0)
    for j, dj in enumerate(S):
        rest = S[:j] + S[j + 1:]
        coef = Fraction(double_factorial(2 * k + 2 * dj + 1), double_factorial(2 * dj - 1))
        total += coef * _get(g, rest + (k + dj,))
    quad = Fraction(0)
    for a in range(k):
        b = k - 1 - a
        c = double_factorial(2 * a + 1) * double_factorial(2 * b + 1)
        inner = _get(g - 1, S + (a, b))
        idx = range(len(S))
        for size in range(len(S) + 1):
            for I in combinations(idx, size):
                Iset = set(I)
                left = tuple(S[i] for i in I)
                right = tuple(S[i] for i in idx if i not in Iset)
                for g1 in range(g + 1):
                    inner += _get(g1, left + (a,)) * _get(g - g1, right + (b,))
        quad += c * inner
    total += quad / 2
    return total / double_factorial(2 * k + 3)


def psi_intersection(g: int, d) -> Fraction:
    """<prod tau_{d_i}>_g; exact 0 off dimension, ValueError if (g, n) is unstable."""
    idx = PsiIndex.of(g, d)
    if not idx.stable:
        raise ValueError(f"unstable (g, n) = ({g}, {idx.n})")
    if not idx.on_dimension:
        return Fraction(0)
    return _value(idx.g, idx.d)


def cache_size() -> int:
    with _lock:
        return len(_memo)


def clear_cache() -> None:
    with _lock:
        _memo.clear()


def save_cache(path) -> int:
    with _lock:
        records = [[g, list(d), str(v)] for (g, d), v in sorted(_memo.items())]
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(json.dumps({"version": CACHE_VERSION, "records": records}))
    return len(records)


def load_cache(path) -> int:
    """Merge a saved cache; a file with another format version is ignored (returns 0)."""
    p = Path(path)
    if not p.exists():
        return 0
    payload = json.loads(p.read_text())
    if payload.get("version") != CACHE_VERSION:
        return 0
    with _lock:
        for g, d, v in payload["records"]:
            _memo[(int(g), tuple(d))] = Fraction(v)
    return len(payload["records"])
