"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction`.  On top of them this module
provides

* Bernoulli polynomials (memoized),
* :class:`CycExt`, elements of ``Q(zeta_r)[alpha, rho]`` with
  ``Phi_r(zeta) = 0``, ``alpha**2 = -2/r`` and ``rho**r = r``,
* :class:`Series`, univariate truncated power series over ``Fraction`` or
  ``CycExt`` with composition, exp/log and Lagrange inversion,
* :class:`MPoly`, sparse multivariate polynomials with exact division.

Nothing here ever touches floating point.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

Rat = Fraction


# ---------------------------------------------------------------------------
# Bernoulli data

_bern_lock = threading.Lock()
_bern_numbers: list[Fraction] = [Fraction(1)]


def bernoulli_number(k: int) -> Fraction:
    """B_k = B_k(0), so B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k < len(_bern_numbers):
        return _bern_numbers[k]
    with _bern_lock:
        while len(_bern_numbers) <= k:
            n = len(_bern_numbers)
            # sum_{j<=n} C(n+1, j) B_j = 0
            s = sum(comb(n + 1, j) * _bern_numbers[j] for j in range(n))
            _bern_numbers.append(-s / (n + 1))
    return _bern_numbers[k]


@lru_cache(maxsize=None)
def bernoulli_poly(k: int, v: Fraction) -> Fraction:
    """B_k(v) from w e^{wv}/(e^w - 1) = sum_j B_j(v) w^j / j!."""
    if k < 0:
        raise ValueError("k must be non-negative")
    v = Fraction(v)
    return sum((comb(k, j) * bernoulli_number(j) * v ** (k - j) for j in range(k + 1)),
               Fraction(0))


def bernoulli_poly_by_series(k: int, v: Fraction) -> Fraction:
    """Same value, read off the generating function with :class:`Series`.

    Kept as an independent route for the tests.
    """
    v = Fraction(v)
    n = k + 1
    # (e^w - 1)/w = sum w^j/(j+1)!
    denom = Series([Fraction(1, factorial(j + 1)) for j in range(n)], n)
    num = Series([v ** j / factorial(j) for j in range(n)], n)
    return (num * denom.reciprocal())[k] * factorial(k)


def double_factorial(n: int) -> int:
    """n!! with (-1)!! = 1 and (-3)!! = -1."""
    if n == -1 or n == 0:
        return 1
    if n == -3:
        return -1
    if n < -3:
        raise ValueError(f"{n}!! is not used here")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


# ---------------------------------------------------------------------------
# Cyclotomic extension

def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    """Division of dense coefficient lists (lowest degree first)."""
    num = list(num)
    dl = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dl:
        return [0], num
    quot = [0] * (len(num) - dl)
    for i in range(len(num) - 1 - dl, -1, -1):
        c = num[i + dl] / lead if not isinstance(lead, int) or lead != 1 else num[i + dl]
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    rem = num[:dl] if dl > 0 else [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, rem = _poly_divmod(p, list(cyclotomic_poly(d)))
            assert not any(rem)
            p = [int(c) for c in q]
    return tuple(p)


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _qpoly_inverse_mod(a: list, m: list) -> list:
    """Inverse of ``a`` modulo ``m`` over Q (extended Euclid)."""
    r0, r1 = [Fraction(x) for x in m], [Fraction(x) for x in a]
    s0, s1 = [Fraction(0)], [Fraction(1)]
    _trim(r1)
    if not r1:
        raise ZeroDivisionError("zero is not invertible")
    while len(r1) > 1:
        q, rem = _poly_divmod(r0, r1)
        rem = _trim([Fraction(x) for x in rem])
        qs = _polymul(q, s1)
        s_new = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                 for i in range(max(len(s0), len(qs)))]
        r0, r1 = r1, rem
        s0, s1 = s1, s_new
        if not r1:
            raise ZeroDivisionError("element is not invertible modulo the cyclotomic polynomial")
    c = r1[0]
    return [x / c for x in s1]


def _polymul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


class CycExt:
    """Element of ``Q(zeta_r)[alpha, rho]``.

    ``zeta`` is reduced modulo the ``r``-th cyclotomic polynomial, ``alpha``
    modulo ``alpha**2 + 2/r`` and ``rho`` modulo ``rho**r - r``.  The data is a
    dict ``{(alpha_deg, rho_deg): zeta-coefficient tuple}`` with zero entries
    dropped, so ``==`` is exact equality.
    """

    __slots__ = ("r", "_d", "_hash")

    def __init__(self, r: int, data: dict | None = None):
        self.r = r
        phi = len(cyclotomic_poly(r)) - 1
        clean = {}
        for key, coeffs in (data or {}).items():
            red = _reduce_zeta(r, coeffs)
            if any(red):
                clean[key] = tuple(Fraction(c) for c in red) + (Fraction(0),) * (phi - len(red))
        self._d = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, r: int, c) -> "CycExt":
        return cls(r, {(0, 0): (Fraction(c),)})

    @classmethod
    def zeta(cls, r: int, power: int = 1) -> "CycExt":
        power %= r
        return cls(r, {(0, 0): tuple([0] * power + [1])})

    @classmethod
    def alpha(cls, r: int) -> "CycExt":
        return cls(r, {(1, 0): (Fraction(1),)})

    @classmethod
    def rho(cls, r: int, power: int = 1) -> "CycExt":
        """``r**(power/r)``, reduced so the stored rho degree is in ``0..r-1``."""
        q, e = divmod(power, r)
        return cls(r, {(0, e): (Fraction(r) ** q,)})

    # helpers ------------------------------------------------------------
    def _coerce(self, other) -> "CycExt":
        if isinstance(other, CycExt):
            if other.r != self.r:
                raise ValueError(f"mismatched r: {self.r} vs {other.r}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycExt.const(self.r, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self._d

    def is_rational(self) -> bool:
        return not self._d or (set(self._d) == {(0, 0)} and not any(self._d[(0, 0)][1:]))

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self._d[(0, 0)][0] if self._d else Fraction(0)

    def components(self) -> dict:
        return dict(self._d)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._d)
        for k, v in other._d.items():
            if k in out:
                out[k] = tuple(a + b for a, b in zip(out[k], v))
            else:
                out[k] = v
        return CycExt(self.r, out)

    __radd__ = __add__

    def __neg__(self):
        return CycExt(self.r, {k: tuple(-c for c in v) for k, v in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return CycExt(self.r)
            return CycExt(self.r, {k: tuple(c * other for c in v) for k, v in self._d.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        r = self.r
        acc: dict = {}
        for (a1, p1), u in self._d.items():
            for (a2, p2), w in other._d.items():
                scale = Fraction(1)
                a, p = a1 + a2, p1 + p2
                if a >= 2:
                    a -= 2
                    scale *= Fraction(-2, r)
                if p >= r:
                    p -= r
                    scale *= r
                prod = _polymul(u, w)
                prod = [c * scale for c in prod]
                if (a, p) in acc:
                    old = acc[(a, p)]
                    n = max(len(old), len(prod))
                    acc[(a, p)] = [(old[i] if i < len(old) else 0) + (prod[i] if i < len(prod) else 0)
                                   for i in range(n)]
                else:
                    acc[(a, p)] = prod
        return CycExt(r, acc)

    __rmul__ = __mul__

    def inverse(self) -> "CycExt":
        r = self.r
        if not self._d:
            raise ZeroDivisionError("division by zero in CycExt")
        rho_degs = {p for (_, p) in self._d}
        if len(rho_degs) != 1:
            raise NotImplementedError("inverse of a mixed rho-degree element")
        (p,) = rho_degs
        # strip rho^p, invert a0 + a1*alpha, put back rho^{-p}
        a0 = CycExt(r, {(0, 0): self._d[(0, p)]} if (0, p) in self._d else {})
        a1 = CycExt(r, {(0, 0): self._d[(1, p)]} if (1, p) in self._d else {})
        norm = a0 * a0 + a1 * a1 * Fraction(2, r)
        ninv = CycExt(r, {(0, 0): tuple(_qpoly_inverse_mod(list(norm._d[(0, 0)]),
                                                           list(cyclotomic_poly(r))))})
        inv = (a0 - a1 * CycExt.alpha(r)) * ninv
        if p:
            inv = inv * CycExt.rho(r, -p)
        return inv

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycExt.const(self.r, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycExt.const(self.r, other)
        if not isinstance(other, CycExt):
            return NotImplemented
        return self.r == other.r and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.r, tuple(sorted(self._d.items()))))
        return self._hash

    def __bool__(self):
        return bool(self._d)

    def __repr__(self):
        if not self._d:
            return "0"
        terms = []
        for (a, p), coeffs in sorted(self._d.items()):
            for e, c in enumerate(coeffs):
                if c:
                    mon = "".join(s for s in (
                        f"*z^{e}" if e else "", "*alpha" if a else "", f"*rho^{p}" if p else ""))
                    terms.append(f"{c}{mon}")
        return " + ".join(terms)


@lru_cache(maxsize=None)
def _zeta_power_table(r: int, top: int) -> tuple:
    phi = cyclotomic_poly(r)
    deg = len(phi) - 1
    rows = []
    for k in range(top + 1):
        vec = [Fraction(0)] * (k + 1)
        vec[k] = Fraction(1)
        _, rem = _poly_divmod(vec, list(phi)) if k >= deg else ([0], vec)
        rem = list(rem) + [0] * (deg - len(rem))
        rows.append(tuple(Fraction(x) for x in rem[:deg]))
    return tuple(rows)


def _reduce_zeta(r: int, coeffs: Sequence) -> list:
    deg = len(cyclotomic_poly(r)) - 1
    if len(coeffs) <= deg:
        return list(coeffs)
    table = _zeta_power_table(r, len(coeffs) - 1)
    out = [Fraction(0)] * deg
    for k, c in enumerate(coeffs):
        if c:
            for j, t in enumerate(table[k]):
                if t:
                    out[j] += c * t
    return out


# ---------------------------------------------------------------------------
# Truncated univariate series

def _is_zero(c) -> bool:
    return c == 0


class Series:
    """Truncated power series ``sum_{k < order} c_k var^k``.

    Coefficients are ``Fraction`` or :class:`CycExt`.  Binary operations
    require equal ``order`` and ``var``; use :meth:`truncate` to change the
    order on purpose.
    """

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs: Iterable, order: int, var: str = "z"):
        c = list(coeffs)[:order]
        c += [0] * (order - len(c))
        self.coeffs = tuple(x if not isinstance(x, int) else Fraction(x) for x in c)
        self.order = order
        self.var = var

    @classmethod
    def monomial(cls, k: int, order: int, c=1, var: str = "z") -> "Series":
        out = [0] * order
        if k < order:
            out[k] = c
        return cls(out, order, var)

    @classmethod
    def one(cls, order: int, var: str = "z") -> "Series":
        return cls.monomial(0, order, 1, var)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < self.order else Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: "Series"):
        if not isinstance(other, Series):
            raise TypeError("expected a Series")
        if other.order != self.order or other.var != self.var:
            raise ValueError(f"order/variable mismatch: ({self.var}, {self.order}) vs "
                             f"({other.var}, {other.order})")

    def truncate(self, order: int) -> "Series":
        return Series(self.coeffs[:order], order, self.var)

    def __add__(self, other):
        if not isinstance(other, Series):
            return Series([self.coeffs[0] + other, *self.coeffs[1:]], self.order, self.var)
        self._check(other)
        return Series([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Series([-a for a in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series([a * other for a in self.coeffs], self.order, self.var)
        self._check(other)
        n = self.order
        out = [Fraction(0)] * n
        a, b = self.coeffs, other.coeffs
        for i in range(n):
            ai = a[i]
            if _is_zero(ai):
                continue
            for j in range(n - i):
                bj = b[j]
                if not _is_zero(bj):
                    out[i + j] = out[i + j] + ai * bj
        return Series(out, n, self.var)

    def __rmul__(self, other):
        return Series([other * a for a in self.coeffs], self.order, self.var)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.reciprocal()
        return self * (1 / other if isinstance(other, CycExt) else Fraction(1) / other)

    def __pow__(self, n: int):
        if n < 0:
            return self.reciprocal() ** (-n)
        out = Series.one(self.order, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.order == other.order and self.var == other.var
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    def __repr__(self):
        terms = [f"({c})*{self.var}^{k}" for k, c in enumerate(self.coeffs) if not _is_zero(c)]
        return (" + ".join(terms) or "0") + f" + O({self.var}^{self.order})"

    # analysis -----------------------------------------------------------
    def valuation(self) -> int:
        for k, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return k
        return self.order

    def reciprocal(self) -> "Series":
        c0 = self.coeffs[0]
        if _is_zero(c0):
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = c0.inverse() if isinstance(c0, CycExt) else Fraction(1) / c0
        out = [inv0] + [Fraction(0)] * (self.order - 1)
        for k in range(1, self.order):
            s = Fraction(0)
            for j in range(1, k + 1):
                if not _is_zero(self.coeffs[j]):
                    s = s + self.coeffs[j] * out[k - j]
            out[k] = -(s * inv0)
        return Series(out, self.order, self.var)

    def derivative(self) -> "Series":
        return Series([k * self.coeffs[k] for k in range(1, self.order)] + [0],
                      self.order, self.var)

    def integral(self) -> "Series":
        """Antiderivative with zero constant term (top coefficient is lost)."""
        return Series([0] + [self.coeffs[k] / (k + 1) if isinstance(self.coeffs[k], CycExt)
                             else Fraction(self.coeffs[k]) / (k + 1)
                             for k in range(self.order - 1)], self.order, self.var)

    def exp(self) -> "Series":
        if not _is_zero(self.coeffs[0]):
            raise ValueError("exp needs a zero constant term")
        # E' = f' E
        d = self.derivative()
        out = [Fraction(1)] + [Fraction(0)] * (self.order - 1)
        for k in range(1, self.order):
            s = Fraction(0)
            for j in range(k):
                if not _is_zero(d.coeffs[j]):
                    s = s + d.coeffs[j] * out[k - 1 - j]
            out[k] = s / k if isinstance(s, CycExt) else Fraction(s) / k
        return Series(out, self.order, self.var)

    def log(self) -> "Series":
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        return (self.derivative() * self.reciprocal()).integral()

    def sqrt(self) -> "Series":
        if self.coeffs[0] != 1:
            raise ValueError("sqrt needs constant term 1")
        return (self.log() * Fraction(1, 2)).exp()

    def compose(self, inner: "Series") -> "Series":
        """``self(inner(z))``; ``inner`` must have zero constant term."""
        if not _is_zero(inner.coeffs[0]):
            raise ValueError("inner series must have zero constant term")
        out = Series([0] * inner.order, inner.order, inner.var)
        for c in reversed(self.coeffs[:inner.order]):
            out = out * inner + c
        return out

    def even_part(self) -> "Series":
        return Series([c if k % 2 == 0 else 0 for k, c in enumerate(self.coeffs)],
                      self.order, self.var)

    def odd_part(self) -> "Series":
        return Series([c if k % 2 else 0 for k, c in enumerate(self.coeffs)],
                      self.order, self.var)

    def scale_var(self, c) -> "Series":
        """``self(c * z)``."""
        out, p = [], Fraction(1)
        for a in self.coeffs:
            out.append(a * p)
            p = p * c
        return Series(out, self.order, self.var)

    def map(self, fn) -> "Series":
        return Series([fn(c) for c in self.coeffs], self.order, self.var)


def lagrange_invert(s: Series) -> Series:
    """Compositional inverse ``t`` with ``s(t(z)) = z + O(z^order)``.

    Uses Newton-free fixed point iteration on ``t = (z - N(t)) / s_1`` where
    ``N`` is the nonlinear part of ``s``; each pass fixes one more coefficient.
    """
    if not _is_zero(s.coeffs[0]):
        raise ValueError("series must have zero constant term")
    if s.order < 2 or _is_zero(s.coeffs[1]):
        raise ValueError("linear coefficient must be invertible")
    c1 = s.coeffs[1]
    inv1 = c1.inverse() if isinstance(c1, CycExt) else Fraction(1) / c1
    nonlinear = Series([0, 0, *s.coeffs[2:]], s.order, s.var)
    z = Series.monomial(1, s.order, 1, s.var)
    t = z * inv1
    for _ in range(s.order):
        t = (z - nonlinear.compose(t)) * inv1
    return t


# ---------------------------------------------------------------------------
# Exact linear algebra

def solve_linear(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Gauss-Jordan over Q for a square nonsingular system."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# Multivariate polynomials

class MPoly:
    """Sparse polynomial in ``nvars`` variables: ``{exponent tuple: coefficient}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "MPoly":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): Fraction(1)})

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MPoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return MPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MPoly.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.nvars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def divmod(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Lex-order division; the remainder is zero iff the division is exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = other.leading()
        q, rem = MPoly(self.nvars), MPoly(self.nvars, dict(self.terms))
        stuck = MPoly(self.nvars)
        while not rem.is_zero():
            e, c = rem.leading()
            if all(a >= b for a, b in zip(e, le)):
                mono = MPoly(self.nvars, {tuple(a - b for a, b in zip(e, le)): Fraction(c) / lc})
                q = q + mono
                rem = rem - mono * other
            else:
                stuck = stuck + MPoly(self.nvars, {e: c})
                rem = rem - MPoly(self.nvars, {e: c})
        return q, stuck

    def exact_div(self, other: "MPoly") -> "MPoly":
        q, rem = self.divmod(other)
        if not rem.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def is_symmetric(self) -> bool:
        from itertools import permutations
        return all(MPoly(self.nvars, {tuple(e[i] for i in perm): c for e, c in self.terms.items()})
                   == self for perm in permutations(range(self.nvars)))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mon = "*".join(f"v{i + 1}^{k}" if k > 1 else f"v{i + 1}" for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mon}" if mon else f"{c}")
        return " + ".join(parts)


def vandermonde(values: Sequence) -> object:
    """prod_{j < i} (x_i - x_j) for any ring elements (ints, Fractions, MPoly)."""
    out = 1
    for i in range(len(values)):
        for j in range(i):
            out = (values[i] - values[j]) * out
    return out
