"""Connections on the half-plane, their transport under lifted germs, and
the moment-map apparatus on the open orbit.

The connection family of interest has Christoffel symbols

    Gamma^2_11 = mu,  Gamma^1_12 = Gamma^1_21 = 1/(2 x2),
    Gamma^2_22 = -1/(2 x2),  all others zero,

with mu a free Laurent function. It is flat exactly when mu = x2 nu(x1).
Transport along the lift (x1, x2) -> (phi(x1), x2/phi'(x1)) only moves the
Gamma^2_11 slot, and fixing the connection ties phi to the Schwarzian
equation S(phi) = phi'^2 nu(phi) - nu.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import Scalar, ZERO, ONE, half
from .laurent import Laurent2
from .germ import DiffeoGerm, Series1, series_to_laurent


class Connection2D:
    """Torsion-free connection with Laurent2 Christoffel symbols."""

    __slots__ = ("gamma", "vars")

    def __init__(self, gamma=None, vars=("x1", "x2")):
        self.vars = tuple(vars)
        clean = {}
        for (l, i, j), v in (gamma or {}).items():
            if not isinstance(v, Laurent2):
                v = Laurent2.const(v, self.vars)
            if i > j:
                i, j = j, i
            if v.is_zero():
                continue
            key = (l, i, j)
            clean[key] = clean.get(key, Laurent2.zero(self.vars)) + v
        self.gamma = clean

    @staticmethod
    def from_mu(mu: Laurent2) -> "Connection2D":
        """The half-plane family with free function mu."""
        v = mu.vars
        return Connection2D({
            (2, 1, 1): mu,
            (1, 1, 2): Laurent2({(0, -1): half(1)}, v),
            (2, 2, 2): Laurent2({(0, -1): -half(1)}, v),
        }, v)

    def christoffel(self, l: int, i: int, j: int) -> Laurent2:
        if i > j:
            i, j = j, i
        return self.gamma.get((l, i, j), Laurent2.zero(self.vars))

    def mu(self) -> Laurent2:
        return self.christoffel(2, 1, 1)

    def matches_family(self, min_common=4) -> bool:
        """All slots except (2,1,1) agree with the from_mu pattern."""
        template = Connection2D.from_mu(Laurent2.zero(self.vars))
        for l in (1, 2):
            for i in (1, 2):
                for j in (i, 2):
                    if (l, i, j) == (2, 1, 1):
                        continue
                    a = self.christoffel(l, i, j)
                    b = template.christoffel(l, i, j)
                    if not a.eq_trunc(b, min_common=min_common):
                        return False
        return True

    def _partial(self, a: int, f: Laurent2) -> Laurent2:
        return f.partial1() if a == 1 else f.partial2()

    def curvature(self):
        """R(d1, d2) applied to d1 and to d2, each as (coeff of d1, coeff of d2).

        R(d_i,d_j)d_k = sum_l [d_i G^l_jk - d_j G^l_ik
                               + sum_m (G^m_jk G^l_im - G^m_ik G^l_jm)] d_l
        """
        i, j = 1, 2
        out = []
        for k in (1, 2):
            vec = []
            for l in (1, 2):
                term = (self._partial(i, self.christoffel(l, j, k))
                        - self._partial(j, self.christoffel(l, i, k)))
                for m in (1, 2):
                    term = term + self.christoffel(m, j, k) * self.christoffel(l, i, m)
                    term = term - self.christoffel(m, i, k) * self.christoffel(l, j, m)
                vec.append(term)
            out.append(tuple(vec))
        return tuple(out)

    def is_flat(self, min_common=4) -> bool:
        z = Laurent2.zero(self.vars)
        return all(c.eq_trunc(z, min_common=min_common)
                   for vec in self.curvature() for c in vec)

    def __repr__(self):
        bits = [f"G^{l}_{i}{j} = {v!r}" for (l, i, j), v in sorted(self.gamma.items())]
        return "Connection2D(" + "; ".join(bits) + ")"


def _lift_jacobian(psi: DiffeoGerm, vars):
    """Jacobian and Hessians of G = lift(psi): t -> (psi(t1), t2/psi'(t1))."""
    p = psi.trunc
    d1 = psi.derivative_series(1, p)
    d2 = psi.derivative_series(2, p)
    d3 = psi.derivative_series(3, p)
    inv1 = d1.reciprocal()
    inv2 = inv1 * inv1
    inv3 = inv2 * inv1
    exact = psi.is_affine()

    def lau(s, e2=0):
        return series_to_laurent(s, e2, vars, exact=exact and s.prec >= 0)

    t2 = Laurent2.var2(vars)
    J = {
        (1, 1): lau(d1), (1, 2): Laurent2.zero(vars),
        (2, 1): lau(-(d2 * inv2), 0) * t2, (2, 2): lau(inv1),
    }
    Jinv = {
        (1, 1): lau(inv1), (1, 2): Laurent2.zero(vars),
        (2, 1): lau(d2 * inv2) * t2, (2, 2): lau(d1),
    }
    hess = {
        1: {(1, 1): lau(d2), (1, 2): Laurent2.zero(vars),
            (2, 2): Laurent2.zero(vars)},
        2: {(1, 1): lau(d2 * d2 * inv3 * 2 - d3 * inv2) * t2,
            (1, 2): lau(-(d2 * inv2)),
            (2, 2): Laurent2.zero(vars)},
    }
    return J, Jinv, hess


def pushforward_connection(conn: Connection2D, phi: DiffeoGerm) -> Connection2D:
    """Transport the connection along the lift of phi (chain rule on symbols)."""
    psi = phi.inverse()
    vars = conn.vars
    J, Jinv, hess = _lift_jacobian(psi, vars)

    def hess_at(l, a, b):
        if a > b:
            a, b = b, a
        return hess[l][(a, b)]

    pulled = {key: psi.pullback(v) for key, v in conn.gamma.items()}

    def pulled_gamma(l, m, n):
        if m > n:
            m, n = n, m
        return pulled.get((l, m, n), Laurent2.zero(vars))

    out = {}
    for c in (1, 2):
        for a in (1, 2):
            for b in (a, 2):
                acc = Laurent2.zero(vars)
                for l in (1, 2):
                    inner = hess_at(l, a, b)
                    for m in (1, 2):
                        for n in (1, 2):
                            g = pulled_gamma(l, m, n)
                            if g.is_zero():
                                continue
                            inner = inner + g * J[(m, a)] * J[(n, b)]
                    acc = acc + Jinv[(c, l)] * inner
                out[(c, a, b)] = acc
    return Connection2D(out, vars)


def pushforward_mu(mu: Laurent2, phi: DiffeoGerm) -> Laurent2:
    """The (2,1,1) slot of the transported family connection."""
    return pushforward_connection(Connection2D.from_mu(mu), phi).mu()


def pushforward_mu_closed(mu: Laurent2, phi: DiffeoGerm) -> Laurent2:
    """Closed form: psi'^3 mu(psi(t1), t2/psi'(t1)) - S(psi)(t1) t2, psi = phi^{-1}."""
    psi = phi.inverse()
    p = psi.trunc
    d1 = psi.derivative_series(1, p)
    exact = psi.is_affine()
    pull = psi.pullback(mu)
    part1 = pull * series_to_laurent(d1.pow_int(3), 0, mu.vars, exact=exact)
    s = psi.schwarzian()
    part2 = series_to_laurent(s, 0, mu.vars, exact=psi.tag is not None)
    return part1 - part2 * Laurent2.var2(mu.vars)


def invariance_defect(mu: Laurent2, phi: DiffeoGerm) -> Laurent2:
    return pushforward_mu(mu, phi) - mu


def schwarzian(phi: DiffeoGerm) -> Series1:
    return phi.schwarzian()


def omega_from_mu(mu: Laurent2) -> Laurent2:
    """Omega = mu / x2^3."""
    return mu.shift(0, -3)


def mu_from_omega(omega: Laurent2) -> Laurent2:
    return omega.shift(0, 3)


def connection_preserving_germ(nu: Series1, a, b, trunc: int = 10) -> DiffeoGerm:
    """Solve S(phi) = phi'^2 nu(phi) - nu with phi(0)=0, phi'(0)=a, phi''(0)=b.

    Coefficientwise: the x^k slot of  phi''' phi' - (3/2) phi''^2
    - phi'^2 (phi'^2 nu(phi) - nu)  determines c_{k+3} linearly.
    """
    a = Scalar.of(a)
    b = Scalar.of(b)
    if a.is_zero():
        raise ValueError("phi'(0) must be invertible")
    if nu.prec < trunc:
        raise ValueError("nu needs precision at least the germ truncation")
    c = [ZERO] * (trunc + 1)
    c[1] = a
    if trunc >= 2:
        c[2] = b * half(1)
    for k in range(0, trunc - 2):
        cur = Series1(c, trunc)
        d1 = cur.derive()
        d2 = d1.derive()
        d3 = d2.derive()
        sq1 = d1 * d1
        rhs = sq1 * (sq1 * nu.compose(cur) - nu)
        defect = d3 * d1 - (d2 * d2) * Scalar(Fraction(3, 2)) - rhs
        dk = defect.coeffs[k]
        if not dk.is_zero():
            denom = Scalar((k + 3) * (k + 2) * (k + 1)) * a
            c[k + 3] = c[k + 3] - dk / denom
    return DiffeoGerm.from_coeffs({k: v for k, v in enumerate(c) if k >= 1},
                                  trunc=trunc)


class MomentSystem:
    """Moment maps and invariant fields on the open orbit chart (p, q)."""

    __slots__ = ("vars",)

    def __init__(self, vars=("p", "q")):
        self.vars = tuple(vars)

    def moment(self, name: str) -> Laurent2:
        v = self.vars
        table = {
            "H": Laurent2({(1, 1): 1}, v),
            "E": Laurent2({(0, 2): half(1)}, v),
            "F": Laurent2({(2, 0): -half(1)}, v),
            "P": Laurent2({(0, 1): 1}, v),
            "Q": Laurent2({(1, 0): -1}, v),
            "Z": Laurent2({(0, 0): 1}, v),
        }
        return table[name]

    def poisson(self, u: Laurent2, v: Laurent2) -> Laurent2:
        return u.partial1() * v.partial2() - u.partial2() * v.partial1()

    def h_tilde(self, f: Laurent2) -> Laurent2:
        """-p d/dp - q d/dq: each monomial scales by minus its degree."""
        return Laurent2({e: c * (-(e[0] + e[1])) for e, c in f.terms.items()},
                        f.vars, f.prec1)

    def e_tilde(self, f: Laurent2) -> Laurent2:
        """(1/q) d/dp."""
        return f.partial1().shift(0, -1)

    def act_mono(self, mono, f: Laurent2) -> Laurent2:
        """PBW monomial action with X -> E~, Y -> H~/2, delta_n -> 0."""
        gamma, a, b = mono
        if gamma:
            return Laurent2.zero(f.vars)
        g = f
        for _ in range(b):
            g = self.e_tilde(g)
        for _ in range(a):
            g = self.h_tilde(g) * half(1)
        return g

    def transport(self, f: Laurent2) -> Laurent2:
        """Pull a (x1, x2) Laurent function to the orbit chart via
        x1 = p/(2q), x2 = q^2 (a symplectomorphism)."""
        out = {}
        for (e1, e2), c in f.terms.items():
            key = (e1, 2 * e2 - e1)
            cc = c * Scalar(Fraction(1, 2 ** e1)) if e1 >= 0 else \
                c * Scalar(Fraction(2 ** (-e1)))
            out[key] = out.get(key, ZERO) + cc
        if f.prec1 is not None:
            raise ValueError("transport needs exact input")
        return Laurent2(out, self.vars)

    # -- checks used by the verification suites ---------------------------

    BRACKET_TABLE = [
        ("H", "E", {"E": 2}), ("H", "F", {"F": -2}), ("E", "F", {"H": 1}),
        ("H", "P", {"P": 1}), ("H", "Q", {"Q": -1}), ("E", "P", {}),
        ("E", "Q", {"P": 1}), ("F", "P", {"Q": 1}), ("F", "Q", {}),
        ("P", "Q", {"Z": 1}),
    ]

    def bracket_cases(self):
        """Each case: {A, B, ok} checking {lam_A, lam_B} = lam_[A,B]."""
        cases = []
        for a, b, combo in self.BRACKET_TABLE:
            want = Laurent2.zero(self.vars)
            for name, coef in combo.items():
                want = want + self.moment(name) * coef
            got = self.poisson(self.moment(a), self.moment(b))
            cases.append({"id": f"bracket-{a}{b}", "ok": (got - want).is_zero(),
                          "lhs": repr(got), "rhs": repr(want)})
        return cases

    def diag_cases(self):
        """Lemma-style diagonalization facts for the invariant fields."""
        cases = []
        for name in ("H", "E", "F"):
            lam = self.moment(name)
            ok = (self.h_tilde(lam) + lam * 2).is_zero()
            cases.append({"id": f"htilde-{name}", "ok": ok})
        for name in ("P", "Q"):
            lam = self.moment(name)
            ok = (self.h_tilde(lam) + lam).is_zero()
            cases.append({"id": f"htilde-{name}", "ok": ok})
        for name in ("H", "E", "F"):
            val = self.moment(name)
            for _ in range(3):
                val = self.e_tilde(val)
            cases.append({"id": f"etilde3-{name}", "ok": val.is_zero()})
        for name in ("P", "Q"):
            val = self.moment(name)
            for _ in range(2):
                val = self.e_tilde(val)
            cases.append({"id": f"etilde2-{name}", "ok": val.is_zero()})
        return cases
