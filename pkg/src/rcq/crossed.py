"""Crossed product of half-plane functions with diffeomorphism germs.

Elements are finite sums f * U_phi with f a Laurent2 coefficient and phi a
DiffeoGerm. Multiplication twists the right factor by the lifted inverse:

    (f U_phi)(g U_psi) = f * (g o lift(phi^{-1})) * U_{phi psi}

where lift(phi) sends (x1, x2) to (phi(x1), x2/phi'(x1)).

The Hopf algebra acts by X = (1/x2) d/dx1 and Y = -x2 d/dx2 on coefficients,
while delta_n multiplies the U_phi component by x2^{-n} c^{(n-1)}(x1) with
c = (phi^{-1})''/(phi^{-1})'. Affine germs are delta-flat.
"""

from __future__ import annotations

from .scalar import Scalar, ONE
from .laurent import Laurent2
from .germ import DiffeoGerm, Series1, series_to_laurent
from .hopf import H1Element, Mono


def cocycle_function(germ: DiffeoGerm, n: int, vars=("x1", "x2")) -> Laurent2:
    """The multiplier of delta_n on U_germ: x2^{-n} c^{(n-1)}(x1)."""
    key = ("cocycle_fn", n, vars)
    hit = germ._cache.get(key)
    if hit is not None:
        return hit
    if germ.is_affine():
        out = Laurent2.zero(vars)
    else:
        s = germ.c_derivative(n - 1)
        out = series_to_laurent(s, -n, vars)
    germ._cache[key] = out
    return out


class CrossedElement:
    """Finite sum of f * U_phi terms; coefficients are Laurent2."""

    __slots__ = ("terms", "vars")

    def __init__(self, terms=None, vars=("x1", "x2")):
        self.vars = tuple(vars)
        clean = {}
        for germ, f in (terms or {}).items():
            if not isinstance(f, Laurent2):
                f = Laurent2.const(f, self.vars)
            if not f.is_zero():
                clean[germ] = f
        self.terms = clean

    @staticmethod
    def of(f, germ=None, vars=("x1", "x2")) -> "CrossedElement":
        if germ is None:
            germ = DiffeoGerm.identity()
        return CrossedElement({germ: f}, vars)

    @staticmethod
    def zero(vars=("x1", "x2")) -> "CrossedElement":
        return CrossedElement({}, vars)

    def __add__(self, other):
        if not isinstance(other, CrossedElement):
            return NotImplemented
        out = dict(self.terms)
        for g, f in other.terms.items():
            cur = out.get(g)
            out[g] = f if cur is None else cur + f
        return CrossedElement(out, self.vars)

    def __neg__(self):
        return CrossedElement({g: -f for g, f in self.terms.items()}, self.vars)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CrossedElement":
        return CrossedElement({g: f * c for g, f in self.terms.items()}, self.vars)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if not isinstance(other, CrossedElement):
            return NotImplemented
        out = {}
        for g1, f1 in self.terms.items():
            pull = g1.inverse()
            for g2, f2 in other.terms.items():
                prod = f1 * pull.pullback(f2)
                germ = g1.compose(g2)
                cur = out.get(germ)
                out[germ] = prod if cur is None else cur + prod
        return CrossedElement(out, self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def eq_trunc(self, other: "CrossedElement", min_common=4) -> bool:
        germs = set(self.terms) | set(other.terms)
        z = Laurent2.zero(self.vars)
        for g in germs:
            a = self.terms.get(g, z)
            b = other.terms.get(g, z)
            if not a.eq_trunc(b, min_common=min_common):
                return False
        return True

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({f!r})*U[{g!r}]" for g, f in self.terms.items())


def act_mono(mono: Mono, elem: CrossedElement) -> CrossedElement:
    """Apply a PBW monomial delta^gamma Y^a X^b to a crossed element."""
    gamma, a, b = mono
    out = {}
    for germ, f in elem.terms.items():
        g = f
        for _ in range(b):
            g = g.x_op()
        for _ in range(a):
            g = g.y_op()
        for n in gamma:
            g = g * cocycle_function(germ, n, elem.vars)
        if not g.is_zero():
            cur = out.get(germ)
            out[germ] = g if cur is None else cur + g
    return CrossedElement(out, elem.vars)


def h1_act(h: H1Element, elem: CrossedElement) -> CrossedElement:
    out = CrossedElement.zero(elem.vars)
    for mono, c in h.terms.items():
        out = out + act_mono(mono, elem).scale(c)
    return out


def delta_cocycle_defect(phi: DiffeoGerm, psi: DiffeoGerm) -> Laurent2:
    """mu_{(phi psi)^{-1}} - mu_{phi^{-1}} - mu_{psi^{-1}} o lift(phi^{-1})."""
    comp = phi.compose(psi)
    lhs = cocycle_function(comp, 1)
    a = cocycle_function(phi, 1)
    b = phi.inverse().pullback(cocycle_function(psi, 1))
    return lhs - a - b
