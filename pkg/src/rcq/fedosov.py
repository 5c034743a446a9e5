"""Flat Fedosov machinery for the half-plane connection family mu.

The connection 1-form Gamma lives in the Weyl bundle; the flatness operator
is D = -delta + d + (i/hbar)[Gamma, .]. For mu = x2 nu(x1) the curvature
vanishes and every base function f extends to a unique flat section, whose
fiber coefficients a_{m,n} follow an explicit two-step recursion. The star
product of two functions is sigma(flat(f) o flat(g)).

The same a_{m,n} data is reproduced by a one-variable operator recursion

    T_0 = 1,  T_1 = X,  T_{m+1} = X T_m + m Omega (Y - (m-1)/2) T_{m-1}

with X = (1/x2) d/dx1, Y = -x2 d/dx2 and Omega = mu/x2^3 acting by
multiplication. Pairing the tables of f and g reproduces every star
coefficient, which is what ties the product to the Rankin-Cohen element
built from X, Y, delta_n and the formal symbols alpha/beta(Omega).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .scalar import Scalar, ZERO, I
from .laurent import Laurent2
from .weyl import WeylSection, HbarSeries, wedge, _minb, moyal_coefficient
from .hopf import H1Element, TensorElement
from .crossed import CrossedElement
from .extended import ExtendedElement, ExtTensor2
from .geometry import omega_from_mu
from . import linalg


def laurent_key(f: Laurent2):
    items = tuple(sorted(f.terms.items(), key=lambda kv: kv[0]))
    return (f.vars, f.prec1, items)


# -- the connection form and its bracket --------------------------------------


def gamma_form(mu: Laurent2) -> WeylSection:
    """Connection 1-form: coefficient table over (fiber deg, form).

    dx1 carries -mu/2 (u1)^2 + 1/(4 x2) (u2)^2, dx2 carries 1/(2 x2) u1 u2.
    """
    v = mu.vars
    terms = {}
    m = mu * Scalar(Fraction(-1, 2))
    if not m.is_zero():
        terms[(0, 2, 0, (1,))] = m
    terms[(0, 0, 2, (1,))] = Laurent2.monomial(0, -1, Fraction(1, 4), v)
    terms[(0, 1, 1, (2,))] = Laurent2.monomial(0, -1, Fraction(1, 2), v)
    return WeylSection(terms, None, v)


def pointwise_mul(a: WeylSection, b: WeylSection) -> WeylSection:
    """Fiberwise commutative product (no contractions), forms wedged."""
    ba, bb = a.bound, b.bound
    if ba is None and bb is None:
        bound = None
    else:
        bound = _minb(None if ba is None else ba + b.val(),
                      None if bb is None else bb + a.val())
    out = {}
    for (k, m1, m2, fa), ca in a.terms.items():
        for (l, p1, p2, fb), cb in b.terms.items():
            w = wedge(fa, fb)
            if w is None:
                continue
            fsign, nf = w
            key = (k + l, m1 + p1, m2 + p2, nf)
            if bound is not None and 2 * key[0] + key[1] + key[2] > bound:
                continue
            add = ca * cb * fsign
            cur = out.get(key)
            out[key] = add if cur is None else cur + add
    return WeylSection(out, bound, a.vars)


def gamma_bracket(gamma: WeylSection, a: WeylSection) -> WeylSection:
    """(i/hbar)[Gamma, a] evaluated symbolically.

    Since Gamma is fiberwise quadratic the graded commutator has a single
    contraction order and the hbar prefactor cancels exactly, leaving the
    fiberwise bracket below.
    """
    return (pointwise_mul(gamma.du(1), a.du(2))
            - pointwise_mul(gamma.du(2), a.du(1)))


def gamma_bracket_via_commutator(gamma: WeylSection, a: WeylSection) -> WeylSection:
    """Same bracket through the Weyl commutator; asserts the hbar cancellation."""
    c = gamma.graded_commutator(a)
    return c.hbar_shift(-1).scale(I)


def fedosov_D(a: WeylSection, mu: Laurent2) -> WeylSection:
    """Flatness operator -delta(a) + d(a) + (i/hbar)[Gamma, a]."""
    return a.d_op() - a.delta_op() + gamma_bracket(gamma_form(mu), a)


# -- flat sections -------------------------------------------------------------


class FlatSection:
    """Fiber coefficient table a_{m,n} of the flat extension of f.

    Keys run over m + n <= bound; a_{0,0} is the source function.
    """

    __slots__ = ("table", "source", "mu", "bound", "vars")

    def __init__(self, table, source, mu, bound, vars):
        self.table = table
        self.source = source
        self.mu = mu
        self.bound = bound
        self.vars = vars

    def coeff(self, m: int, n: int) -> Laurent2:
        return self.table.get((m, n), Laurent2.zero(self.vars))

    def section(self) -> WeylSection:
        terms = {}
        for (m, n), val in self.table.items():
            if not val.is_zero():
                terms[(0, m, n, ())] = val
        return WeylSection(terms, self.bound, self.vars)

    def __repr__(self):
        return f"FlatSection(bound={self.bound}, source={self.source!r})"


_FLAT_MEMO = {}


def flat_section(f: Laurent2, mu: Laurent2, bound: int) -> FlatSection:
    """Solve D a = 0 with a_{0,0} = f by the induction on fiber degree.

    First the u1-column: m a_{m,0} = d1 a_{m-1,0} - mu (d2 - (m-2)/(2 x2}) a_{m-2,0};
    then each row by (n+1) a_{m,n+1} = (d2 + (n-m)/(2 x2)) a_{m,n}.
    """
    memo_key = (laurent_key(f), laurent_key(mu), bound)
    hit = _FLAT_MEMO.get(memo_key)
    if hit is not None:
        return hit
    t = {(0, 0): f}
    for m in range(1, bound + 1):
        val = t[(m - 1, 0)].partial1()
        if m >= 2:
            prev = t[(m - 2, 0)]
            corr = prev.partial2() - prev.shift(0, -1) * Fraction(m - 2, 2)
            val = val - mu * corr
        t[(m, 0)] = val * Fraction(1, m)
    for m in range(0, bound + 1):
        for n in range(0, bound - m):
            cur = t[(m, n)]
            nxt = cur.partial2() + cur.shift(0, -1) * Fraction(n - m, 2)
            t[(m, n + 1)] = nxt * Fraction(1, n + 1)
    out = FlatSection(t, f, mu, bound, f.vars)
    _FLAT_MEMO[memo_key] = out
    return out


def flat_section_fixpoint(f: Laurent2, mu: Laurent2, bound: int) -> WeylSection:
    """Independent construction: iterate a = f + delta_inv(d a + [Gamma, a])."""
    g = gamma_form(mu)
    base = WeylSection.of_base(f, bound)
    a = base
    for _ in range(bound + 3):
        nxt = (base + (a.d_op() + gamma_bracket(g, a)).delta_inv()).truncate(bound)
        if nxt.terms == a.terms:
            return nxt
        a = nxt
    raise RuntimeError("flat section iteration did not stabilize")


def flat_recursion_defects(flat: FlatSection):
    """Residuals of the two displayed components of D a = 0.

    Returns a list of Laurent2 values, all zero when the table is flat:
      dx1:  -(m+1) a_{m+1,n} + d1 a_{m,n} - (n+1) mu a_{m-1,n+1}
            - (m+1)/(2 x2) a_{m+1,n-1}
      dx2:  -(n+1) a_{m,n+1} + d2 a_{m,n} + (n-m)/(2 x2) a_{m,n}
    """
    t, mu, bound = flat.table, flat.mu, flat.bound
    zero = Laurent2.zero(flat.vars)

    def a(m, n):
        if m < 0 or n < 0:
            return zero
        return t.get((m, n), zero)

    out = []
    for m in range(0, bound):
        for n in range(0, bound - m):
            d1 = (a(m + 1, n) * (-(m + 1)) + a(m, n).partial1()
                  - mu * a(m - 1, n + 1) * (n + 1)
                  - a(m + 1, n - 1).shift(0, -1) * Fraction(m + 1, 2))
            d2 = (a(m, n + 1) * (-(n + 1)) + a(m, n).partial2()
                  + a(m, n).shift(0, -1) * Fraction(n - m, 2))
            out.append(d1)
            out.append(d2)
    return out


def closed_form_x2(flat: FlatSection, m: int, n: int) -> Laurent2:
    """a_{m,n} from a_{m,0} by (1/n!) prod_j (d2 + (j-m)/(2 x2))."""
    h = flat.coeff(m, 0)
    for j in range(n):
        h = h.partial2() + h.shift(0, -1) * Fraction(j - m, 2)
    return h * Fraction(1, factorial(n))


def rc_closed_form_coeff(m: int, n: int, f: Laurent2, mu: Laurent2,
                         omega_sign: int = 1) -> Laurent2:
    """a_{m,n} through the X/Y operator recursion.

    a_{m,n} = (-1)^n x2^(m-n) / (n! m!) * T_m((Y + m/2)...(Y + (m+n-1)/2) f)
    with T_{k+1} = X T_k + omega_sign * k * Omega (Y - (k-1)/2) T_{k-1}.
    """
    om = omega_from_mu(mu)
    h = f
    for j in range(n):
        h = h.y_op() + h * Fraction(m + j, 2)
    prev, cur = None, h
    for k in range(m):
        nxt = cur.x_op()
        if k >= 1:
            w = prev.y_op() - prev * Fraction(k - 1, 2)
            nxt = nxt + om * w * (omega_sign * k)
        prev, cur = cur, nxt
    sign = Fraction((-1) ** n, factorial(n) * factorial(m))
    return cur.shift(0, m - n) * sign


# -- the star product ----------------------------------------------------------


def fedosov_star(f: Laurent2, g: Laurent2, mu: Laurent2, N: int) -> HbarSeries:
    """sigma(flat(f) o flat(g)) to hbar order N (fiber degree 2N)."""
    bound = 2 * N
    prod = flat_section(f, mu, bound).section().weyl_mul(
        flat_section(g, mu, bound).section())
    hs = prod.sigma()
    return HbarSeries({k: c for k, c in hs.coeffs.items() if k <= N},
                      N, f.vars)


def star_oracle(f: Laurent2, g: Laurent2, mu: Laurent2, N: int) -> HbarSeries:
    """Star coefficients straight from the tables, no Weyl multiplication:

    c_j = (-i/2)^j sum_{m+n=j} (-1)^n m! n! a_{m,n}(f) b_{n,m}(g).
    """
    tf = flat_section(f, mu, N)
    tg = flat_section(g, mu, N)
    out = {}
    base = (-I) * Scalar(Fraction(1, 2))
    for j in range(N + 1):
        acc = Laurent2.zero(f.vars)
        for m in range(j + 1):
            n = j - m
            c = Scalar(Fraction((-1) ** n * factorial(m) * factorial(n)))
            acc = acc + tf.coeff(m, n) * tg.coeff(n, m) * c
        out[j] = acc * (base ** j)
    return HbarSeries(out, N, f.vars)


def star_left(hs: HbarSeries, g: Laurent2, mu: Laurent2, N: int) -> HbarSeries:
    out = {}
    for k, c in hs.coeffs.items():
        if k > N:
            continue
        sub = fedosov_star(c, g, mu, N - k)
        for j, cc in sub.coeffs.items():
            cur = out.get(k + j)
            out[k + j] = cc if cur is None else cur + cc
    return HbarSeries(out, N, g.vars)


def star_right(f: Laurent2, hs: HbarSeries, mu: Laurent2, N: int) -> HbarSeries:
    out = {}
    for k, c in hs.coeffs.items():
        if k > N:
            continue
        sub = fedosov_star(f, c, mu, N - k)
        for j, cc in sub.coeffs.items():
            cur = out.get(k + j)
            out[k + j] = cc if cur is None else cur + cc
    return HbarSeries(out, N, f.vars)


def star_assoc_defect(f: Laurent2, g: Laurent2, h: Laurent2,
                      mu: Laurent2, N: int) -> HbarSeries:
    """(f*g)*h - f*(g*h) as an HbarSeries; zero when associative."""
    left = star_left(fedosov_star(f, g, mu, N), h, mu, N)
    right = star_right(f, fedosov_star(g, h, mu, N), mu, N)
    return left - right


# -- Rankin-Cohen elements -----------------------------------------------------


def rc_apply(n, f, g, x_fn, y_fn, mul, omega=None,
             omega_sign: int = 1, poch_sign: int = 1):
    """Evaluate the order-n Rankin-Cohen pairing in any realization.

    sum_k (1/(k!(n-k)!)) A_k((2Y + s*k)_{n-k} f) * B_{n-k}((2Y + s*(n-k))_k g)

    with A built from -X and B from X, both sharing the Omega correction
    A_{j+1} = -X A_j + omega_sign * j * Omega (Y-(j-1)/2) A_{j-1} (same for B
    with +X). Pass omega=None for realizations where Omega acts by zero.
    No overall scalar: callers multiply by their own hbar normalization.
    """

    def poch(h, shift, count):
        for j in range(count):
            h = y_fn(h) * 2 + h * (shift + j)
        return h

    def chain(h, count, sgn_x):
        prev, cur = None, h
        for j in range(count):
            nxt = x_fn(cur) * sgn_x
            if j >= 1 and omega is not None:
                w = y_fn(prev) - prev * Fraction(j - 1, 2)
                nxt = nxt + mul(omega, w) * (omega_sign * j)
            prev, cur = cur, nxt
        return cur

    total = None
    for k in range(n + 1):
        left = chain(poch(f, poch_sign * k, n - k), k, -1)
        right = chain(poch(g, poch_sign * (n - k), k), n - k, 1)
        term = mul(left, right) * Fraction(1, factorial(k) * factorial(n - k))
        total = term if total is None else total + term
    return total


def rc_star_coefficient(n: int, f: Laurent2, g: Laurent2, mu: Laurent2,
                        omega_sign: int = 1, poch_sign: int = 1) -> Laurent2:
    """hbar^n coefficient of the star product via the RC pairing:
    (-i/4)^n rc_apply(n, ...) in the half-plane realization."""
    om = omega_from_mu(mu)
    if om.is_zero():
        om = None
    val = rc_apply(n, f, g, Laurent2.x_op, Laurent2.y_op,
                   lambda u, v: u * v, omega=om,
                   omega_sign=omega_sign, poch_sign=poch_sign)
    c = (-I) * Scalar(Fraction(1, 4))
    return val * (c ** n)


def _h1_poch(shift: int, count: int) -> H1Element:
    out = H1Element.unit()
    for j in range(count):
        out = out * (H1Element.y() * 2 + H1Element.unit() * Scalar.of(shift + j))
    return out


def rc_element(n: int, sx_mode: str = "antipode",
               poch_sign: int = 1) -> TensorElement:
    """Order-n Rankin-Cohen element in H1 tensor H1 (Omega = 0).

    sx_mode picks the left-leg letter: "antipode" uses S(X) = -X + delta_1 Y,
    "minus_x" uses plain -X.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    X = H1Element.x()
    sx = X.antipode() if sx_mode == "antipode" else -X
    total = TensorElement.zero(2)
    for k in range(n + 1):
        a = H1Element.unit()
        for _ in range(k):
            a = sx * a
        a = a * _h1_poch(poch_sign * k, n - k)
        b = H1Element.unit()
        for _ in range(n - k):
            b = X * b
        b = b * _h1_poch(poch_sign * (n - k), k)
        a = a * Scalar(Fraction(1, factorial(k)))
        b = b * Scalar(Fraction(1, factorial(n - k)))
        total = total + TensorElement.of(a, b)
    return total


def rc_element_extended(n: int, sx_mode: str = "antipode",
                        omega_sign: int = 1, poch_sign: int = 1) -> ExtTensor2:
    """Order-n RC element over the extended algebra with formal Omega.

    Left legs A_m use the right-multiplication symbol beta(Omega), right
    legs B_m the left multiplication alpha(Omega):

        A_{m+1} = S(X) A_m + omega_sign * m * beta0 (Y-(m-1)/2) A_{m-1}
        B_{m+1} =    X B_m + omega_sign * m * alpha0 (Y-(m-1)/2) B_{m-1}
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    X = H1Element.x()
    sx = X.antipode() if sx_mode == "antipode" else -X
    SX = ExtendedElement.of_h1(sx)
    XE = ExtendedElement.of_h1(X)
    YE = ExtendedElement.of_h1(H1Element.y())
    om_right = ExtendedElement.beta(0)
    om_left = ExtendedElement.alpha(0)
    A = [ExtendedElement.unit()]
    B = [ExtendedElement.unit()]
    for m in range(n):
        nxt = SX * A[m]
        if m >= 1:
            shift = YE - ExtendedElement.unit() * Scalar(Fraction(m - 1, 2))
            nxt = nxt + (om_right * (shift * A[m - 1])) * (omega_sign * m)
        A.append(nxt)
        nxtb = XE * B[m]
        if m >= 1:
            shift = YE - ExtendedElement.unit() * Scalar(Fraction(m - 1, 2))
            nxtb = nxtb + (om_left * (shift * B[m - 1])) * (omega_sign * m)
        B.append(nxtb)

    def poch(shift, count):
        out = ExtendedElement.unit()
        for j in range(count):
            out = out * (YE * 2 + ExtendedElement.unit() * Scalar.of(shift + j))
        return out

    total = ExtTensor2({})
    for k in range(n + 1):
        left = (A[k] * poch(poch_sign * k, n - k)) * Scalar(Fraction(1, factorial(k)))
        right = (B[n - k] * poch(poch_sign * (n - k), k)) * Scalar(Fraction(1, factorial(n - k)))
        total = total + ExtTensor2.of(left, right)
    return total


# -- crossed product star ------------------------------------------------------


def crossed_star(a: CrossedElement, b: CrossedElement, mu: Laurent2, N: int):
    """Star product on the crossed product: per germ pair,
    (f U_phi)(g U_psi) = (f * pullback(g)) U_{phi psi}.

    Returns a dict germ -> HbarSeries.
    """
    out = {}
    for g1, f1 in a.terms.items():
        pull = g1.inverse()
        for g2, f2 in b.terms.items():
            hs = fedosov_star(f1, pull.pullback(f2), mu, N)
            germ = g1.compose(g2)
            cur = out.get(germ)
            out[germ] = hs if cur is None else cur + hs
    return out


def chi_rc_star(a: CrossedElement, b: CrossedElement, mu: Laurent2, N: int,
                sx_mode: str = "antipode", omega_sign: int = 1,
                poch_sign: int = 1):
    """Evaluate sum_n hbar^n (-i/4)^n chi(rc_element_extended(n))(a, b).

    Returns a dict germ -> HbarSeries for comparison with crossed_star.
    """
    om = omega_from_mu(mu)
    base = (-I) * Scalar(Fraction(1, 4))
    acc = {}
    for n in range(N + 1):
        T = rc_element_extended(n, sx_mode=sx_mode,
                                omega_sign=omega_sign, poch_sign=poch_sign)
        val = T.eval_pair(a, b, om).scale(base ** n)
        for germ, coeff in val.terms.items():
            d = acc.setdefault(germ, {})
            cur = d.get(n)
            d[n] = coeff if cur is None else cur + coeff
    vars = a.vars
    return {g: HbarSeries(d, N, vars) for g, d in acc.items()}


def crossed_tables_eq(d1, d2, N=None, min_common=4) -> bool:
    """Compare two germ -> HbarSeries dicts up to truncation."""
    germs = set(d1) | set(d2)
    for g in germs:
        h1 = d1.get(g)
        h2 = d2.get(g)
        if h1 is None:
            if all(c.is_zero() for c in h2.coeffs.values()):
                continue
            return False
        if h2 is None:
            if all(c.is_zero() for c in h1.coeffs.values()):
                continue
            return False
        if not h1.eq_trunc(h2, order=N, min_common=min_common):
            return False
    return True


# -- gauge comparison with the chart Moyal product ----------------------------


def _hochschild_op_defect(op, f, g):
    """f op(g) - op(f g) + op(f) g for a linear operator on Laurent2."""
    return f * op(g) - op(f * g) + op(f) * g


def gauge_transform_order2(samples=None):
    """Solve for the order-2 gauge operator between the mu = 0 star and
    the chart Moyal product.

    Both products share the hbar^1 coefficient, so the first correction
    appears at hbar^2 and must be a Hochschild coboundary of a differential
    operator T2. Returns (sign, ops) with ops a list of
    (j, a, b, Scalar) meaning coefficient * x2^j d1^a d2^b, satisfying
    c2_star - c2_moyal = sign * b(T2) on the sample corpus, or None.
    """
    v = ("x1", "x2")
    if samples is None:
        samples = []
        mons = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (0, -1), (2, 1)]
        for e in mons:
            for e2 in mons:
                samples.append((Laurent2.monomial(*e, 1, v),
                                Laurent2.monomial(*e2, 1, v)))
    mu = Laurent2.zero(v)

    basis = []
    for a in range(0, 3):
        for b in range(0, 3):
            if a + b == 0 or a + b > 3:
                continue
            for j in range(-3, 2):
                basis.append((j, a, b))

    def apply_op(spec, f):
        j, a, b = spec
        h = f
        for _ in range(a):
            h = h.partial1()
        for _ in range(b):
            h = h.partial2()
        return h.shift(0, j)

    # assemble one long coordinate vector per unknown operator
    rows_cols = []
    targets = []
    keys_per_sample = []
    for f, g in samples:
        c2 = fedosov_star(f, g, mu, 2).coeff(2)
        m2 = moyal_coefficient(f, g, 2)
        diff = c2 - m2
        defects = [_hochschild_op_defect(lambda h, s=spec: apply_op(s, h), f, g)
                   for spec in basis]
        keys = set(diff.terms)
        for d in defects:
            keys |= set(d.terms)
        keys = sorted(keys)
        keys_per_sample.append(keys)
        for key in keys:
            rows_cols.append([d.terms.get(key, ZERO) for d in defects])
            targets.append(diff.terms.get(key, ZERO))
    for sign in (1, -1):
        rhs = [t * sign for t in targets]
        sol = linalg.solve(rows_cols, rhs)
        if sol is not None:
            ops = [(spec[0], spec[1], spec[2], c)
                   for spec, c in zip(basis, sol) if not c.is_zero()]
            return (sign, ops)
    return None
