"""Local data of the curve x = -y^r + log y at its r branch points.

Branch point i sits at y_i = r^{-1/r} J^i, J = exp(2 pi I / r).  Writing
y = y_i (1 + u) the local coordinate z (with z^2 = x - x_i) satisfies

    z^2 = -(1/r)((1 + u)^r - 1) + log(1 + u) = -(r/2) u^2 S(u),   S(0) = 1,

so with alpha = I sqrt(2) r^{-1/2} (alpha^2 = -2/r) one has alpha z = u sqrt(S(u)),
and u(z) = phi^{-1}(alpha z), phi(u) = u sqrt(S(u)).  The branch is the one
with u'(0) = +alpha.  Everything is then rational or lives in CycExt.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact import CycExt, Series, bernoulli_poly, double_factorial, lagrange_invert


# ---------------------------------------------------------------------------
# the local inversion

@lru_cache(maxsize=None)
def u_substitution(r: int, order: int) -> Series:
    """z^2 as a series in u: -(1/r)((1+u)^r - 1) + log(1+u)."""
    one_plus_u = Series([1, 1], order, "u")
    power = Series.one(order, "u")
    for _ in range(r):
        power = power * one_plus_u
    return (power - Series.one(order, "u")) * Fraction(-1, r) + one_plus_u.log()


@lru_cache(maxsize=None)
def inverse_branch(r: int, order: int, sign: int = 1) -> Series:
    """U(w) with U(phi(u)) = u, phi(u) = u sqrt(S(u)); sign=-1 gives the other branch."""
    s2 = u_substitution(r, order + 2)
    # S(u) = z^2 / (-(r/2) u^2)
    S = Series([c * Fraction(-2, r) for c in s2.coeffs[2:]], order + 2, "u").truncate(order)
    phi = Series([0] + list((S.sqrt()).coeffs[:order - 1]), order, "u")
    U = lagrange_invert(phi)
    if sign == -1:
        U = U.scale_var(-1)
    return U


def local_odd_expansion(r: int, order: int, sign: int = 1) -> list[Fraction]:
    """V_0..V_{order-1} read off the odd part of y(z_i).

    y = y_i (1 + U(alpha z)); the odd part is y_i alpha z sum V_j (2r)^j z^{2j}/(2j+1)!!,
    so V_j = c_{2j+1} alpha^{2j} (2j+1)!!/(2r)^j = c_{2j+1} (-1)^j (2j+1)!!/r^{2j}.
    The other branch (sign=-1) flips every V_j.
    """
    U = inverse_branch(r, 2 * order + 1, sign)
    return [U[2 * j + 1] * (-1) ** j * double_factorial(2 * j + 1) / Fraction(r) ** (2 * j)
            for j in range(order)]


def _bernoulli_exp(v: Fraction, order: int) -> Series:
    """exp(-sum_{k>=1} B_{k+1}(v) z^k / (k(k+1)))."""
    return Series([0] + [-bernoulli_poly(k + 1, v) / (k * (k + 1)) for k in range(1, order)],
                  order).exp()


def v_bernoulli(r: int, order: int) -> list[Fraction]:
    return list(_bernoulli_exp(Fraction(1, r), order).coeffs)


# ---------------------------------------------------------------------------
# two-point data

def _laurent_y(r: int, i1: int, i2: int, order: int) -> dict[int, CycExt]:
    """Y_{i1 i2}(z) = alpha omega u'/(1 - omega(1+u))^2, omega = J^{i2-i1}, as {power: coeff}.

    In w = alpha z, Y = alpha^2 omega U'(w)/(1 - omega - omega U(w))^2; the w^k
    coefficient e_k becomes e_k alpha^{k+2} in z.
    """
    U = inverse_branch(r, order + 3)
    n = order + 3
    Ud = U.derivative()
    out: dict[int, CycExt] = {}
    if (i2 - i1) % r == 0:
        # U = w (1 + v):  U'/U^2 = (1 + v + w v') / (w^2 (1+v)^2)
        one_v = Series(U.coeffs[1:], n)
        num = Series([one_v[k] * (k + 1) for k in range(n)], n)   # d/dw (w (1+v)) = (1+v) + w v'
        q = num * (one_v * one_v).reciprocal()
        for k in range(n):
            if q[k]:
                out[k - 2] = CycExt.alpha(r) ** k * q[k]   # alpha^2 w^{k-2} -> alpha^k z^{k-2}
        return out
    om = CycExt.zeta(r, i2 - i1)
    zero = CycExt.const(r, 0)
    den = Series([CycExt.const(r, 1) - om] + [-om * U[k] for k in range(1, n)], n)
    den = Series([c if isinstance(c, CycExt) else CycExt.const(r, c) for c in den.coeffs], n)
    inv = den.reciprocal()
    inv2 = inv * inv
    Udc = Series([CycExt.const(r, c) for c in Ud.coeffs], n)
    q = Udc * inv2
    for k in range(n):
        c = q[k] * om
        if c != zero:
            out[k] = c * CycExt.alpha(r) ** (k + 2)
    return out


def u_matrix_direct(r: int, i1: int, i2: int, order: int) -> list[CycExt]:
    """(U_k)_{i1 i2}, k < order, from the even part of Y:  U_k = -[z^{2k-2}] Y (2k-3)!!/(2r)^k."""
    Y = _laurent_y(r, i1, i2, 2 * order)
    out = []
    for k in range(order):
        c = Y.get(2 * k - 2, CycExt.const(r, 0))
        out.append(-c * Fraction(double_factorial(2 * k - 3), (2 * r) ** k))
    return out


def u_matrix_bernoulli(r: int, i1: int, i2: int, order: int) -> list[CycExt]:
    """(1/r) sum_c exp(-sum B_{k+1}(c/r) z^k/(k(k+1))) J^{c(i2-i1)}."""
    out = [CycExt.const(r, 0) for _ in range(order)]
    for c in range(r):
        s = _bernoulli_exp(Fraction(c, r), order)
        w = CycExt.zeta(r, c * (i2 - i1)) * Fraction(1, r)
        for k in range(order):
            out[k] = out[k] + w * s[k]
    return out


# ---------------------------------------------------------------------------
# leaves

def xi_closed_form(r: int, a: int, order: int) -> list[Fraction]:
    """(rn + r - a - 1)^n / n!, n < order, with 0^0 = 1."""
    return [Fraction((r * n + r - a - 1) ** n, factorial(n)) for n in range(order)]


def xi_direct(r: int, a: int, order: int) -> list[Fraction]:
    """Same coefficients from e^x = y e^{-y^r}.

    With t = r y^r and s = r e^{rx} one has s = t e^{-t}.  Then
    r^{(r-a-1)/r} y^{r-a-1}/(1 - r y^r) = s^b e^{b t}/(1 - t), b = (r-a-1)/r,
    and the factored coefficient of e^{(rn+r-a-1)x} is r^n [s^n] e^{bt}/(1-t).
    """
    s_of_t = (Series([0, -1], order + 1, "s")).exp() * Series([0, 1], order + 1, "s")
    t = lagrange_invert(s_of_t)
    b = Fraction(r - a - 1, r)
    G = (t * b).exp() * (1 - t).reciprocal()
    return [G[n] * Fraction(r) ** n for n in range(order)]


@dataclass
class XiSeries:
    r: int
    a: int
    closed: list
    direct: list

    @property
    def agree(self) -> bool:
        return self.closed == self.direct

    def prefactor(self) -> CycExt:
        """I sqrt(2) r^{1/2 - (a+1)/r} = alpha r rho^{-(a+1)}."""
        return CycExt.alpha(self.r) * self.r * CycExt.rho(self.r, -(self.a + 1))


def xi_tilde(r: int, a: int, order: int) -> XiSeries:
    if not 0 <= a < r:
        raise ValueError("a out of range")
    return XiSeries(r, a, xi_closed_form(r, a, order), xi_direct(r, a, order))


# ---------------------------------------------------------------------------
# normalized-idempotent frame
#
# v_i = sum_a J^{-(a+1) i} e_a.  In this frame eta^{-1} = sum_i v_i (x) v_i, the
# degree-zero theory is diagonal, omega(v_i^n)_g = r^{2g+n-2} J^{-(2g-2+n) i},
# the unit is e_0 = (1/r) sum_i J^i v_i, and R v_i = sum_j U_{ij}(z) v_j.

def _zero(r):
    return CycExt.const(r, 0)


def _mat_series_inverse(M: list, r: int, order: int) -> list:
    """Inverse of I + N for an r x r matrix of coefficient lists with M(0) = I."""
    N = [[[M[i][j][k] - (1 if (k == 0 and i == j) else 0) for k in range(order)]
          for j in range(r)] for i in range(r)]

    def mul(A, B):
        out = [[[_zero(r) for _ in range(order)] for _ in range(r)] for _ in range(r)]
        for i in range(r):
            for j in range(r):
                for m in range(r):
                    a, b = A[i][m], B[m][j]
                    for p in range(order):
                        if a[p] == 0:
                            continue
                        for q in range(order - p):
                            if b[q] != 0:
                                out[i][j][p + q] = out[i][j][p + q] + a[p] * b[q]
        return out

    inv = [[[CycExt.const(r, 1 if (k == 0 and i == j) else 0) for k in range(order)]
            for j in range(r)] for i in range(r)]
    term = inv
    negN = [[[-c for c in N[i][j]] for j in range(r)] for i in range(r)]
    for _ in range(1, order):
        term = mul(term, negN)
        inv = [[[inv[i][j][k] + term[i][j][k] for k in range(order)] for j in range(r)]
               for i in range(r)]
    return inv


def _u_table(r: int, order: int, source: str) -> list:
    f = u_matrix_direct if source == "direct" else u_matrix_bernoulli
    return [[[CycExt.const(r, c) if not isinstance(c, CycExt) else c for c in f(r, i, j, order)]
             for j in range(r)] for i in range(r)]


def _idempotent_pieces(r: int, order: int, source: str):
    """(legs, edge, dilaton) of R.T.omega in the v-frame, R from the U table."""
    from .cohft import divide_by_sum
    U = _u_table(r, order, source)
    # matrix of R acting on columns: R v_i = sum_j U_ij v_j  =>  Rmat[j][i] = U[i][j]
    Rmat = [[U[i][j] for i in range(r)] for j in range(r)]
    Rinv = _mat_series_inverse(Rmat, r, order)
    zero = _zero(r)
    legs = {i: {(j, s): Rinv[j][i][s] for j in range(r) for s in range(order)
                if Rinv[j][i][s] != zero} for i in range(r)}
    edge = {}
    for j in range(r):
        for l in range(r):
            num = {}
            for p in range(order):
                for q in range(order - p):
                    c = CycExt.const(r, 1 if (p == q == 0 and j == l) else 0)
                    for m in range(r):
                        c = c - Rinv[j][m][p] * Rinv[l][m][q]
                    if c != zero:
                        num[(p, q)] = c
            for (p, q), c in divide_by_sum(num, zero).items():
                if p + q < order - 1:
                    edge[(j, l, p, q)] = c
    unit = [CycExt.zeta(r, i) * Fraction(1, r) for i in range(r)]
    dilaton = {}
    for l in range(r):
        for s in range(1, order - 1):
            c = zero
            for j in range(r):
                c = c - Rinv[l][j][s] * unit[j]
            if c != zero:
                dilaton[(l, s + 1)] = c
    return legs, edge, dilaton


def _omega_idem(r: int):
    def omega(g, idx):
        if len(set(idx)) != 1:
            return _zero(r)
        i, n = idx[0], len(idx)
        return CycExt.zeta(r, -(2 * g - 2 + n) * i) * Fraction(r) ** (2 * g + n - 2)
    return omega


@lru_cache(maxsize=None)
def coh_idempotent_engine(r: int, order: int, source: str = "bernoulli"):
    from .cohft import GiventalEngine
    legs, edge, dil = _idempotent_pieces(r, order, source)
    return GiventalEngine(_omega_idem(r), legs, edge, dil, zero=_zero(r))


def coh_idempotent_correlator(g: int, pairs, r: int):
    """<prod tau^{i}_{d}>^coh = sum_a <prod tau^a_d>~coh prod J^{-(a_j+1) i_j}, from flat correlators."""
    from itertools import product as iproduct
    from .cohft import givental_correlator
    total = _zero(r)
    for a in iproduct(range(r), repeat=len(pairs)):
        c = givental_correlator(g, [(aj, d) for aj, (_, d) in zip(a, pairs)], r)
        if c:
            w = CycExt.zeta(r, -sum((aj + 1) * i for aj, (i, _) in zip(a, pairs)))
            total = total + w * c
    return total


def _h1(r: int, i: int) -> CycExt:
    """h_1^i = y_{i1} = I sqrt(2) r^{-1/2-1/r} J^i = alpha rho^{-1} J^i."""
    return CycExt.alpha(r) * CycExt.rho(r, -1) * CycExt.zeta(r, i)


@lru_cache(maxsize=None)
def tr_engine(r: int, order: int):
    """Graph sum with the curve's local data (direct V and U expansions).

    vertex (index i, genus q, p half-edges): (-2 h_1^i)^{2-2q-p};
    dilaton leaf psi^{k+1} at index i: 2 h_1^i (2r)^k V_k;
    edge: (-2r)^{k+l+1} times the R-matrix edge coefficient;
    leaf: (-2r)^s times the R^{-1} coefficient, s = extra psi power.
    """
    from .cohft import GiventalEngine
    legs, edge, _ = _idempotent_pieces(r, order, "direct")
    m2r = Fraction(-2 * r)
    legs = {i: {(j, s): c * m2r ** s for (j, s), c in d.items()} for i, d in legs.items()}
    edge = {(j, l, p, q): c * m2r ** (p + q + 1) for (j, l, p, q), c in edge.items()}
    V = local_odd_expansion(r, order)
    dil = {}
    for i in range(r):
        for k in range(1, order - 1):
            if V[k]:
                dil[(i, k + 1)] = _h1(r, i) * 2 * Fraction(2 * r) ** k * V[k]

    def omega(g, idx):
        if len(set(idx)) != 1:
            return _zero(r)
        return (_h1(r, idx[0]) * -2) ** (2 - 2 * g - len(idx))

    return GiventalEngine(omega, legs, edge, dil, zero=_zero(r))


@dataclass
class ScalingReport:
    g: int
    r: int
    pairs: tuple
    lhs: CycExt
    rhs: CycExt

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def scaling_identity_check(g: int, r: int, pairs) -> ScalingReport:
    """t.r. prod (-2r)^{d+1/2} == coh (idempotent frame) r^{(2g+n-2)(1+1/r)}.

    pairs are (i, d) with i an idempotent index.  (-2r)^{1/2} = alpha r.
    """
    pairs = tuple(tuple(p) for p in pairs)
    n = len(pairs)
    order = 3 * g - 3 + n + 2
    tr = tr_engine(r, order).correlator(g, list(pairs))
    lhs = tr
    for _, d in pairs:
        lhs = lhs * Fraction(-2 * r) ** d * (CycExt.alpha(r) * r)
    chi = 2 * g + n - 2
    rhs = coh_idempotent_correlator(g, pairs, r) * Fraction(r) ** chi * CycExt.rho(r, chi)
    return ScalingReport(g, r, pairs, lhs, rhs)


# ---------------------------------------------------------------------------
# assembling W_{g,n} from the CohFT

def doss_assemble(g: int, r: int, n: int, k_bound: int) -> dict[tuple, Fraction]:
    """Coefficient of prod e^{k_j x_j} dx_j in W_{g,n}, for 1 <= k_j <= k_bound.

    Sum over (a, d) of the t.r. correlator -- obtained from the coh one by the
    scaling identity -- times D prod (-2 d/dx)^{d} xi~_a.  The CycExt prefactors
    (I sqrt 2, powers of r^{1/r}) are carried symbolically and must cancel.
    """
    from itertools import product as iproduct
    from .cohft import givental_correlator
    from .hurwitz import Profile
    if 2 * g - 2 + n <= 0:
        raise ValueError("unstable (g, n)")
    out = {}
    dim = 3 * g - 3 + n
    for k in iproduct(range(1, k_bound + 1), repeat=n):
        prof = Profile(g, r, k)
        if not prof.valid:
            out[k] = Fraction(0)
            continue
        pa = prof.parts
        total = _zero(r)
        for d in iproduct(range(dim + 1), repeat=n):
            if sum(d) > dim:
                continue
            coh = givental_correlator(g, [(a, dj) for (_, a), dj in zip(pa, d)], r)
            if not coh:
                continue
            sa = sum(a for _, a in pa)
            # <..>~tr = <..>~coh r^{2g+2n-2+(2g-2-sum a)/r-sum d} / prod(I sqrt(2r) r^{-(a+1)/r} (-2)^d)
            tr = CycExt.const(r, coh * Fraction(r) ** (2 * g + 2 * n - 2 - sum(d))) \
                * CycExt.rho(r, 2 * g - 2 - sa)
            term = tr
            for ((p, a), kj, dj) in zip(pa, k, d):
                leaf_norm = CycExt.alpha(r) * r * CycExt.rho(r, -(a + 1)) * Fraction(-2) ** dj
                xi_pref = CycExt.alpha(r) * r * CycExt.rho(r, -(a + 1))
                # D (-2 d/dx)^d of the e^{k x} term of xi~_a
                coeff = xi_pref * (Fraction(-2 * kj) ** dj * kj * Fraction(kj ** p, factorial(p)))
                term = term * coeff / leaf_norm
            total = total + term
        out[k] = total.to_fraction()
    return out


# ---------------------------------------------------------------------------
# direct residue computation in w = r^{1/r} y  (branch points w_i = J^i)
#
# x' = -w^r/r + log w = x + (log r)/r, X = e^{x'} = w e^{-w^r/r}.
# omega_{0,1} = y dx with y = rho^{-1} w, omega_{0,2} = dw dw'/(w - w')^2.

@lru_cache(maxsize=None)
def _w_of_X(r: int, order: int) -> Series:
    X_of_w = Series([0, 1], order, "X") * Series(
        [0] * r + [Fraction(-1, r)] + [0] * max(0, order - r - 1), order, "X").exp()
    return lagrange_invert(X_of_w)


def _leaf_series(r: int, coeffs_p: dict, order: int) -> list:
    """[X^k] of sum_m c_m w(X)^m * X w'(X) for k < order."""
    w = _w_of_X(r, order)
    jac = Series([0, 1], order, "X") * w.derivative()
    out = [_zero(r) for _ in range(order)]
    pw = Series.one(order, "X")
    for m in range(order):
        c = coeffs_p.get(m)
        if c is not None and c != 0:
            s = pw * jac
            for k in range(order):
                if s[k]:
                    out[k] = out[k] + c * s[k]
        pw = pw * w
    return out


def _local_point(r: int, i: int, order: int, sign: int = 1) -> Series:
    """q(z) = w_i (1 + U(alpha z)) with CycExt coefficients."""
    U = inverse_branch(r, order)
    wi = CycExt.zeta(r, i)
    al = CycExt.alpha(r) * sign
    coeffs = [wi] + [wi * (al ** n) * U[n] for n in range(1, order)]
    return Series(coeffs, order)


def _w11_p_coeffs(r: int, mmax: int) -> dict[int, CycExt]:
    """c_m with W_{1,1}(p) = sum_m c_m p^m dp (p near 0)."""
    order = 8
    out = {m: _zero(r) for m in range(mmax + 1)}
    for i in range(r):
        q = _local_point(r, i, order)
        sq = _local_point(r, i, order, sign=-1)
        diff = q - sq
        D = Series(list(diff.coeffs[1:]) + [_zero(r)], order)        # (q - sq)/z
        Dinv = D.reciprocal()
        Dinv3 = Dinv * Dinv * Dinv
        qd, sqd = q.derivative(), sq.derivative()
        qinv = q.reciprocal()
        sqinv = sq.reciprocal()
        qi, sqi = qinv, sqinv
        for m in range(mmax + 1):
            # qi = q^{-(m+1)}
            Nz = qi - sqi
            N = Series(list(Nz.coeffs[1:]) + [_zero(r)], order)       # odd -> divide by z
            integrand = N * qd * sqd * Dinv3
            # K B = -(1/4) N q' sq' / (z^3 D^3) dz dp; residue = z^2 coefficient
            out[m] = out[m] + integrand[2] * Fraction(-1, 4)
            qi, sqi = qi * qinv, sqi * sqinv
    return out


def _w03_p_coeffs(r: int, mmax: int) -> dict[tuple, CycExt]:
    """c_{m0 m1 m2} with W_{0,3}(p) = sum c prod p_j^{m_j} dp_j, by one recursion step.

    Res K(p0, q) [B(q, p1) B(sq, p2) + B(q, p2) B(sq, p1)], expanded at p_j = 0:
    1/(p - q) = -sum p^m q^{-m-1},  1/(q - p)^2 = sum (m+1) p^m q^{-m-2}.
    """
    order = 2 * mmax + 8
    out: dict[tuple, CycExt] = {}
    for i in range(r):
        q = _local_point(r, i, order)
        sq = _local_point(r, i, order, sign=-1)
        diff = q - sq
        D = Series(list(diff.coeffs[1:]) + [_zero(r)], order)
        Dinv = D.reciprocal()
        jac = q.derivative() * sq.derivative() * Dinv
        qinv, sqinv = q.reciprocal(), sq.reciprocal()
        qp = [Series.one(order)]
        sqp = [Series.one(order)]
        for _ in range(mmax + 2):
            qp.append(qp[-1] * qinv)
            sqp.append(sqp[-1] * sqinv)
        for m0 in range(mmax + 1):
            Nz = qp[m0 + 1] - sqp[m0 + 1]
            N = Series(list(Nz.coeffs[1:]) + [_zero(r)], order)
            base = N * jac
            for m1 in range(mmax + 1):
                for m2 in range(m1, mmax + 1):
                    S = qp[m1 + 2] * sqp[m2 + 2] + qp[m2 + 2] * sqp[m1 + 2]
                    val = (base * S)[0] * Fraction(-(m1 + 1) * (m2 + 1), 4)
                    for key in {(m0, m1, m2), (m0, m2, m1)}:
                        out[key] = out.get(key, _zero(r)) + val
    return out


def _leaf_table(r: int, order: int) -> list[list]:
    """L[m][k] = [X^k] w(X)^m X w'(X)."""
    return [_leaf_series(r, {m: CycExt.const(r, 1)}, order) for m in range(order)]


def eo_direct(g: int, n: int, r: int, k_bound: int) -> dict[tuple, Fraction]:
    """Coefficients of prod e^{k_j x_j} dx_j in W_{g,n} by explicit residues; (0,3), (1,1) only.

    The kernel uses omega_{0,1} = w dx; the y = rho^{-1} w normalisation is
    restored at the end as rho^{2g-2+n}, and e^{k x'} = r^{k/r} e^{k x}.
    """
    from itertools import product as iproduct
    order = k_bound + 1
    L = _leaf_table(r, order)
    raw = {}
    if (g, n) == (0, 3):
        c = _w03_p_coeffs(r, k_bound)
        for k in iproduct(range(1, k_bound + 1), repeat=3):
            tot = _zero(r)
            for m, v in c.items():
                if all(mj <= kj for mj, kj in zip(m, k)):
                    tot = tot + v * L[m[0]][k[0]] * L[m[1]][k[1]] * L[m[2]][k[2]]
            raw[k] = tot
    elif (g, n) == (1, 1):
        cm = _w11_p_coeffs(r, k_bound)
        ser = _leaf_series(r, cm, order)
        raw = {(k,): ser[k] for k in range(1, k_bound + 1)}
    else:
        raise ValueError("eo_direct supports (g, n) = (0, 3) and (1, 1) only")
    out = {}
    for k, v in raw.items():
        val = v * CycExt.rho(r, 2 * g - 2 + n) * CycExt.rho(r, sum(k))
        out[k] = val.to_fraction()
    return out


# ---------------------------------------------------------------------------
# lemma report

LEMMA_SCHEMA = "spectral-lemmas/1"


def lemma_report(v_max_r: int = 4, v_order: int = 7, u_max_r: int = 3, u_order: int = 5,
                 xi_max_r: int = 4, xi_order: int = 7, unit_max_r: int = 6) -> dict:
    """Direct-vs-closed-form comparisons of the local branch-point data."""
    v = [{"r": r, "agree": local_odd_expansion(r, v_order) == v_bernoulli(r, v_order)}
         for r in range(1, v_max_r + 1)]
    u = []
    for r in range(1, u_max_r + 1):
        bad = [[i1, i2] for i1 in range(r) for i2 in range(r)
               if u_matrix_direct(r, i1, i2, u_order) != u_matrix_bernoulli(r, i1, i2, u_order)]
        u.append({"r": r, "agree": not bad, "mismatched_pairs": bad})
    xi = [{"r": r, "a": a, "agree": xi_tilde(r, a, xi_order).agree}
          for r in range(1, xi_max_r + 1) for a in range(r)]
    one, zero = CycExt.const, _zero
    units = []
    for r in range(1, unit_max_r + 1):
        u0 = all(u_matrix_direct(r, i1, i2, 1)[0] == (one(r, 1) if i1 == i2 else zero(r))
                 for i1 in range(r) for i2 in range(r))
        units.append({"r": r, "U0_is_identity": u0, "V0_is_one": local_odd_expansion(r, 1)[0] == 1})
    ok = (all(x["agree"] for x in v + u + xi)
          and all(x["U0_is_identity"] and x["V0_is_one"] for x in units))
    return {"schema": LEMMA_SCHEMA, "V": v, "U": u, "xi": xi, "normalisation": units, "ok": ok}


def lemma_report_markdown(rep: dict) -> str:
    lines = ["| check | r | extra | verdict |", "|---|---|---|---|"]
    for x in rep["V"]:
        lines.append(f"| V_j direct vs Bernoulli | {x['r']} | | {'PASS' if x['agree'] else 'FAIL'} |")
    for x in rep["U"]:
        lines.append(f"| U_k direct vs Bernoulli | {x['r']} | | {'PASS' if x['agree'] else 'FAIL'} |")
    for x in rep["xi"]:
        lines.append(f"| xi~ routes | {x['r']} | a={x['a']} | {'PASS' if x['agree'] else 'FAIL'} |")
    for x in rep["normalisation"]:
        good = x["U0_is_identity"] and x["V0_is_one"]
        lines.append(f"| U_0 = 1, V_0 = 1 | {x['r']} | | {'PASS' if good else 'FAIL'} |")
    return "\n".join(lines) + "\n"


def triangle_report(rs=(1, 2), k_bound: int = 4) -> dict:
    """eo_direct vs doss_assemble, and doss vs prod(k) h / m! on proved cells."""
    from math import prod
    from .hurwitz import Profile, connected_hurwitz
    rows = []
    for r in rs:
        for g, n in ((0, 3), (1, 1)):
            doss = doss_assemble(g, r, n, k_bound)
            eo = eo_direct(g, n, r, k_bound)
            eo_bad = [list(k) for k in doss if doss[k] != eo[k]]
            h_bad = []
            for k, val in doss.items():
                p = Profile(g, r, k)
                want = (prod(k) * connected_hurwitz(p) / factorial(p.m)) if p.valid else 0
                if val != want:
                    h_bad.append(list(k))
            rows.append({"g": g, "n": n, "r": r, "k_bound": k_bound, "cells": len(doss),
                         "eo_vs_doss_mismatch": eo_bad, "doss_vs_hurwitz_mismatch": h_bad})
    return {"schema": "spectral-triangle/1", "rows": rows,
            "ok": all(not x["eo_vs_doss_mismatch"] and not x["doss_vs_hurwitz_mismatch"] for x in rows)}


def scaling_cells(r: int, max_dim: int = 1):
    """(g, pairs) for every stable (g, n) with 3g - 3 + n <= max_dim, up to symmetry."""
    from itertools import combinations_with_replacement, product
    out = []
    for g in range(max_dim // 3 + 2):
        for n in range(1, max_dim + 4):
            dim = 3 * g - 3 + n
            if 2 * g - 2 + n <= 0 or dim < 0 or dim > max_dim:
                continue
            seen = set()
            for idx in combinations_with_replacement(range(r), n):
                for d in product(range(dim + 1), repeat=n):
                    if sum(d) != dim:
                        continue
                    key = tuple(sorted(zip(idx, d)))
                    if key not in seen:
                        seen.add(key)
                        out.append((g, key))
    return out


def scaling_report(rs=(1, 2, 3), max_dim: int = 1) -> dict:
    rows = []
    for r in rs:
        cells = scaling_cells(r, max_dim)
        bad = [[g, [list(p) for p in pairs]] for g, pairs in cells
               if not scaling_identity_check(g, r, pairs).holds]
        rows.append({"r": r, "cells": len(cells), "failures": bad})
    return {"schema": "spectral-scaling/1", "max_dim": max_dim, "rows": rows,
            "ok": all(not x["failures"] for x in rows)}
