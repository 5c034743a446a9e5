"""Modular forms with exact q-expansions and Rankin-Cohen brackets.

A ModularForm is a truncated q-series with a weight tag. The operator
X(f) = D(f) - (k/12) E2 f (D = q d/dq) raises the weight by 2 and stays
inside the modular ring; Y scales by half the weight. Membership in
M_w is decided by exact linear algebra against the basis
{E4^a E6^b : 4a + 6b = w}.

QuasiForm tracks the ring Q[E2, E4, E6] symbolically so that depth
statements (degree in E2) are syntactic; D acts by the Ramanujan
derivations and X drops the depth back to zero.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .qseries import QSeries, eisenstein, delta_qexp
from . import linalg
from .scalar import Scalar


class ModularForm:
    __slots__ = ("q", "weight")

    def __init__(self, q: QSeries, weight: int):
        self.q = q
        self.weight = int(weight)

    @property
    def prec(self) -> int:
        return self.q.prec

    def coeff(self, n: int) -> Fraction:
        return self.q.coeff(n)

    def __add__(self, other):
        if isinstance(other, ModularForm):
            if other.weight != self.weight and not (self.q.is_zero() or other.q.is_zero()):
                raise ValueError("adding different weights")
            w = other.weight if self.q.is_zero() else self.weight
            return ModularForm(self.q + other.q, w)
        return NotImplemented

    def __neg__(self):
        return ModularForm(-self.q, self.weight)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ModularForm):
            return ModularForm(self.q * other.q, self.weight + other.weight)
        if isinstance(other, (int, Fraction)):
            return ModularForm(self.q * Fraction(other), self.weight)
        if isinstance(other, Scalar):
            if not other.im == 0:
                raise ValueError("modular forms use rational scalars")
            return ModularForm(self.q * other.re, self.weight)
        return NotImplemented

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.q.is_zero()

    def __eq__(self, other):
        return (isinstance(other, ModularForm) and self.q == other.q
                and (self.weight == other.weight or self.q.is_zero()))

    def __repr__(self):
        return f"ModularForm(w={self.weight}, {self.q!r})"


def E2(prec: int) -> ModularForm:
    """Weight tag 2 by convention; quasimodular, used in x_op only."""
    return ModularForm(eisenstein(2, prec), 2)


def E4(prec: int) -> ModularForm:
    return ModularForm(eisenstein(4, prec), 4)


def E6(prec: int) -> ModularForm:
    return ModularForm(eisenstein(6, prec), 6)


def delta(prec: int) -> ModularForm:
    return ModularForm(delta_qexp(prec), 12)


def one(prec: int) -> ModularForm:
    return ModularForm(QSeries.const(1, prec), 0)


NAMED = {"E2": E2, "E4": E4, "E6": E6, "Delta": delta, "1": one}


def d_form(f: ModularForm) -> ModularForm:
    """q d/dq, weight bumped by 2 (quasimodular in general)."""
    return ModularForm(f.q.d_op(), f.weight + 2)


def x_op(f: ModularForm) -> ModularForm:
    """D(f) - (k/12) E2 f; lands back in M_{k+2}."""
    corr = eisenstein(2, f.prec) * Fraction(f.weight, 12)
    return ModularForm(f.q.d_op() - corr * f.q, f.weight + 2)


def y_op(f: ModularForm) -> ModularForm:
    return ModularForm(f.q * Fraction(f.weight, 2), f.weight)


def y_half_weight(f: ModularForm) -> ModularForm:
    # alias used by the generic RC pairing: Y acts by k/2
    return y_op(f)


def rc_modular(n: int, f: ModularForm, g: ModularForm) -> ModularForm:
    """sum_{r+s=n} (-1)^r C(n+k-1, s) C(n+l-1, r) D^r f D^s g."""
    if n < 0:
        raise ValueError("bracket order must be >= 0")
    k, l = f.weight, g.weight
    ds_f = [f.q]
    ds_g = [g.q]
    for _ in range(n):
        ds_f.append(ds_f[-1].d_op())
        ds_g.append(ds_g[-1].d_op())
    out = QSeries.zero(f.prec if f.prec <= g.prec else g.prec)
    for r in range(n + 1):
        s = n - r
        c = Fraction((-1) ** r * comb(n + k - 1, s) * comb(n + l - 1, r))
        out = out + ds_f[r] * ds_g[s] * c
    return ModularForm(out, k + l + 2 * n)


def basis_for_weight(w: int, prec: int):
    """Monomials E4^a E6^b with 4a + 6b = w (spans M_w for even w >= 0)."""
    if w < 0 or w % 2:
        return []
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    out = []
    for b in range(w // 6 + 1):
        rest = w - 6 * b
        if rest % 4:
            continue
        a = rest // 4
        out.append(((a, b), e4.pow_int(a) * e6.pow_int(b)))
    return out


def dim_modular(w: int) -> int:
    if w < 0 or w % 2:
        return 0
    if w % 12 == 2:
        return w // 12
    return w // 12 + 1


def membership(f: ModularForm):
    """Exact coordinates of f in the E4^a E6^b basis of its weight,
    or None if f is not in the span. Raises when the q-precision cannot
    support the solve."""
    basis = basis_for_weight(f.weight, f.prec)
    need = dim_modular(f.weight) + 1
    if f.prec < need:
        raise ValueError(
            f"need at least {need} q-coefficients for weight {f.weight}, "
            f"have {f.prec}")
    if not basis:
        return [] if f.is_zero() else None
    rows = range(f.prec)
    mat = [[q.coeff(n) for (_, q) in basis] for n in rows]
    rhs = [f.q.coeff(n) for n in rows]
    sol = linalg.solve(mat, rhs)
    if sol is None:
        return None
    return [(ab, c) for ((ab, _), c) in zip(basis, sol)]


def proportional_to_delta(f: ModularForm):
    """If f = c * Delta (exactly, within precision), return the Fraction c."""
    d = delta_qexp(f.prec)
    lead = f.q.coeff(1)
    if (f.q - d * lead).is_zero() and f.q.coeff(0) == 0:
        return lead
    return None


def omega_form(prec: int) -> ModularForm:
    """Weight-4 multiplier -E4/72.

    With X the weight-raising derivation and Y the half-weight grading,
    the generic chain recursion for the brackets needs a curvature term;
    in this realization it is multiplication by this form. The constant
    is pinned by matching rc_modular at n = 2 and holds for all higher n."""
    return E4(prec) * Fraction(-1, 72)


def star_product(f: ModularForm, g: ModularForm, order: int):
    """Zagier's deformation: list of RC_n(f, g) for n = 0..order."""
    return [rc_modular(n, f, g) for n in range(order + 1)]


def zagier_assoc_defect(f: ModularForm, g: ModularForm, h: ModularForm,
                        order: int):
    """Per t^n defect of ((f*g)*h - f*(g*h)) with * = sum t^n RC_n.

    Returns a list of QSeries, one per order, all zero when associative."""
    out = []
    for n in range(order + 1):
        acc = None
        for i in range(n + 1):
            left = rc_modular(n - i, rc_modular(i, f, g), h).q
            right = rc_modular(n - i, f, rc_modular(i, g, h)).q
            d = left - right
            acc = d if acc is None else acc + d
        out.append(acc)
    return out


# -- quasimodular ring ----------------------------------------------------------


class QuasiForm:
    """Element of Q[E2, E4, E6]: terms {(a, b, c): Fraction} for
    E2^a E4^b E6^c, graded by weight 2a + 4b + 6c."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, v in (terms or {}).items():
            v = Fraction(v)
            if v:
                clean[key] = clean.get(key, Fraction(0)) + v
        self.terms = {k: v for k, v in clean.items() if v}

    @staticmethod
    def gen(name: str) -> "QuasiForm":
        idx = {"E2": (1, 0, 0), "E4": (0, 1, 0), "E6": (0, 0, 1)}[name]
        return QuasiForm({idx: 1})

    @staticmethod
    def const(c) -> "QuasiForm":
        return QuasiForm({(0, 0, 0): c})

    @staticmethod
    def delta_sym() -> "QuasiForm":
        return QuasiForm({(0, 3, 0): Fraction(1, 1728),
                          (0, 0, 2): Fraction(-1, 1728)})

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, Fraction(0)) + v
        return QuasiForm(t)

    def __neg__(self):
        return QuasiForm({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuasiForm({k: v * other for k, v in self.terms.items()})
        t = {}
        for (a1, b1, c1), v1 in self.terms.items():
            for (a2, b2, c2), v2 in other.terms.items():
                k = (a1 + a2, b1 + b2, c1 + c2)
                t[k] = t.get(k, Fraction(0)) + v1 * v2
        return QuasiForm(t)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, QuasiForm) and self.terms == other.terms

    def depth(self) -> int:
        """Degree in E2."""
        return max((k[0] for k in self.terms), default=0)

    def weight(self) -> int:
        ws = {2 * a + 4 * b + 6 * c for (a, b, c) in self.terms}
        if len(ws) > 1:
            raise ValueError(f"inhomogeneous weights {sorted(ws)}")
        return ws.pop() if ws else 0

    def d_op(self) -> "QuasiForm":
        """Ramanujan derivations: D E2 = (E2^2 - E4)/12,
        D E4 = (E2 E4 - E6)/3, D E6 = (E2 E6 - E4^2)/2."""
        e2 = QuasiForm.gen("E2")
        e4 = QuasiForm.gen("E4")
        e6 = QuasiForm.gen("E6")
        de2 = (e2 * e2 - e4) * Fraction(1, 12)
        de4 = (e2 * e4 - e6) * Fraction(1, 3)
        de6 = (e2 * e6 - e4 * e4) * Fraction(1, 2)
        out = QuasiForm({})
        for (a, b, c), v in self.terms.items():
            base = QuasiForm({(a, b, c): v})
            if a:
                out = out + QuasiForm({(a - 1, b, c): v * a}) * de2
            if b:
                out = out + QuasiForm({(a, b - 1, c): v * b}) * de4
            if c:
                out = out + QuasiForm({(a, b, c - 1): v * c}) * de6
        return out

    def x_op(self) -> "QuasiForm":
        k = self.weight()
        return self.d_op() - QuasiForm.gen("E2") * self * Fraction(k, 12)

    def qexpansion(self, prec: int) -> QSeries:
        out = QSeries.zero(prec)
        gens = (eisenstein(2, prec), eisenstein(4, prec), eisenstein(6, prec))
        for (a, b, c), v in self.terms.items():
            term = QSeries.const(v, prec)
            for g, e in zip(gens, (a, b, c)):
                if e:
                    term = term * g.pow_int(e)
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (a, b, c) in sorted(self.terms):
            v = self.terms[(a, b, c)]
            mon = "".join(s for s, e in (("E2^%d" % a, a), ("E4^%d" % b, b),
                                         ("E6^%d" % c, c)) if e)
            bits.append(f"{v}*{mon or '1'}")
        return " + ".join(bits)
