"""Weyl-bundle sections over the half-plane chart and Moyal star products.

A WeylSection is a finite sum of terms  hbar^k * f(x1,x2) * u1^m1 u2^m2 * dx^I
stored as {(k, m1, m2, form): Laurent2}. The form index I is a strictly
increasing tuple drawn from (1, 2). Total degree of a term is 2k + m1 + m2
(forms do not count); `bound` records up to which total degree the section is
known, with None meaning exact.

The fiberwise product contracts with the symplectic pairing in which the
commutator of the two fiber coordinates is -i*hbar; the same contraction on
base derivatives gives the Moyal star product.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .scalar import Scalar, ZERO, ONE, I
from .laurent import Laurent2

FORMS = ((), (1,), (2,), (1, 2))


def wedge(f1, f2):
    """Wedge two increasing index tuples: (sign, merged) or None if repeated."""
    if set(f1) & set(f2):
        return None
    merged = f1 + f2
    inv = 0
    for i in range(len(merged)):
        for j in range(i + 1, len(merged)):
            if merged[i] > merged[j]:
                inv += 1
    return ((-1) ** inv, tuple(sorted(merged)))


def interior(k, form):
    """Contraction of d/dx^k into a form: (sign, reduced form) or None."""
    if k not in form:
        return None
    pos = form.index(k)
    return ((-1) ** pos, form[:pos] + form[pos + 1:])


def falling(m: int, r: int) -> int:
    out = 1
    for j in range(r):
        out *= (m - j)
    return out


def _minb(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class WeylSection:
    """Finite Weyl-bundle section with form part; coefficients are Laurent2."""

    __slots__ = ("terms", "bound", "vars")

    def __init__(self, terms=None, bound=None, vars=("x1", "x2")):
        self.vars = tuple(vars)
        self.bound = bound
        clean = {}
        for key, coeff in (terms or {}).items():
            k, m1, m2, form = key
            if form not in FORMS:
                raise ValueError(f"bad form index {form!r}")
            if not isinstance(coeff, Laurent2):
                coeff = Laurent2.const(coeff, self.vars)
            if coeff.is_zero():
                continue
            if bound is not None and 2 * k + m1 + m2 > bound:
                continue
            clean[(k, m1, m2, form)] = coeff
        self.terms = clean

    @staticmethod
    def zero(bound=None, vars=("x1", "x2")) -> "WeylSection":
        return WeylSection({}, bound, vars)

    @staticmethod
    def of_base(f: Laurent2, bound=None) -> "WeylSection":
        """A base function as a degree-0 section."""
        return WeylSection({(0, 0, 0, ()): f}, bound, f.vars)

    def val(self) -> int:
        if not self.terms:
            return 0 if self.bound is None else self.bound + 1
        return min(2 * k + m1 + m2 for (k, m1, m2, _f) in self.terms)

    def coeff(self, k, m1, m2, form=()) -> Laurent2:
        return self.terms.get((k, m1, m2, form), Laurent2.zero(self.vars))

    # -- linear structure ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, WeylSection):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            cur = out.get(key)
            out[key] = c if cur is None else cur + c
        return WeylSection(out, _minb(self.bound, other.bound), self.vars)

    def __neg__(self):
        return WeylSection({k: -c for k, c in self.terms.items()},
                           self.bound, self.vars)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "WeylSection":
        """Multiply by a Scalar or a base Laurent2 function."""
        if isinstance(c, Laurent2):
            return WeylSection({k: v * c for k, v in self.terms.items()},
                               self.bound, self.vars)
        c = Scalar.of(c)
        return WeylSection({k: v * c for k, v in self.terms.items()},
                           self.bound, self.vars)

    def hbar_shift(self, d: int) -> "WeylSection":
        """Multiply by hbar^d (degree bookkeeping shifts by 2d)."""
        out = {(k + d, m1, m2, f): c for (k, m1, m2, f), c in self.terms.items()}
        if any(k < 0 for (k, _m1, _m2, _f) in out):
            raise ValueError("negative hbar power")
        b = None if self.bound is None else self.bound + 2 * d
        return WeylSection(out, b, self.vars)

    def du(self, i: int) -> "WeylSection":
        """Fiber derivative d/du^i."""
        out = {}
        for (k, m1, m2, f), c in self.terms.items():
            if i == 1 and m1 > 0:
                key = (k, m1 - 1, m2, f)
                out[key] = out.get(key, Laurent2.zero(self.vars)) + c * m1
            if i == 2 and m2 > 0:
                key = (k, m1, m2 - 1, f)
                out[key] = out.get(key, Laurent2.zero(self.vars)) + c * m2
        b = None if self.bound is None else self.bound - 1
        return WeylSection(out, b, self.vars)

    # -- differentials ---------------------------------------------------------

    def delta_op(self) -> "WeylSection":
        """dx^k wedge d/du^k: lowers fiber degree, raises form degree."""
        out = {}
        for (k, m1, m2, f), c in self.terms.items():
            for i, m in ((1, m1), (2, m2)):
                if m == 0:
                    continue
                w = wedge((i,), f)
                if w is None:
                    continue
                sign, nf = w
                key = (k, m1 - (i == 1), m2 - (i == 2), nf)
                add = c * (sign * m)
                cur = out.get(key)
                out[key] = add if cur is None else cur + add
        b = None if self.bound is None else self.bound - 1
        return WeylSection(out, b, self.vars)

    def delta_star(self) -> "WeylSection":
        """u^k . iota(d/dx^k): raises fiber degree, lowers form degree."""
        out = {}
        for (k, m1, m2, f), c in self.terms.items():
            for i in (1, 2):
                red = interior(i, f)
                if red is None:
                    continue
                sign, nf = red
                key = (k, m1 + (i == 1), m2 + (i == 2), nf)
                add = c * sign
                cur = out.get(key)
                out[key] = add if cur is None else cur + add
        b = None if self.bound is None else self.bound + 1
        return WeylSection(out, b, self.vars)

    def delta_inv(self) -> "WeylSection":
        """Homotopy inverse: delta_star weighted by 1/(fiber deg + form deg),
        acting as zero on the fiber-and-form degree (0,0) part."""
        out = {}
        for (k, m1, m2, f), c in self.terms.items():
            p, q = m1 + m2, len(f)
            if p + q == 0:
                continue
            w = Scalar(Fraction(1, p + q))
            for i in (1, 2):
                red = interior(i, f)
                if red is None:
                    continue
                sign, nf = red
                key = (k, m1 + (i == 1), m2 + (i == 2), nf)
                add = c * (w * sign)
                cur = out.get(key)
                out[key] = add if cur is None else cur + add
        b = None if self.bound is None else self.bound + 1
        return WeylSection(out, b, self.vars)

    def d_op(self) -> "WeylSection":
        """Base de Rham differential dx^i wedge d/dx^i on coefficients."""
        out = {}
        for (k, m1, m2, f), c in self.terms.items():
            for i, dc in ((1, c.partial1()), (2, c.partial2())):
                if dc.is_zero():
                    continue
                w = wedge((i,), f)
                if w is None:
                    continue
                sign, nf = w
                key = (k, m1, m2, nf)
                add = dc * sign
                cur = out.get(key)
                out[key] = add if cur is None else cur + add
        return WeylSection(out, self.bound, self.vars)

    def sigma(self) -> "HbarSeries":
        """Project to the fiber- and form-degree zero part."""
        order = None if self.bound is None else self.bound // 2
        coeffs = {}
        for (k, m1, m2, f), c in self.terms.items():
            if m1 == m2 == 0 and f == ():
                coeffs[k] = c
        return HbarSeries(coeffs, order, self.vars)

    # -- fiberwise product -------------------------------------------------------

    def weyl_mul(self, other: "WeylSection") -> "WeylSection":
        if self.vars != other.vars:
            raise ValueError("variable mismatch")
        ba, bb = self.bound, other.bound
        if ba is None and bb is None:
            bound = None
        else:
            bound = _minb(None if ba is None else ba + other.val(),
                          None if bb is None else bb + self.val())
        out = {}
        for (k, m1, m2, fa), ca in self.terms.items():
            for (l, p1, p2, fb), cb in other.terms.items():
                w = wedge(fa, fb)
                if w is None:
                    continue
                fsign, nf = w
                base = ca * cb
                if base.is_zero():
                    continue
                for r in range(min(m1, p2) + 1):
                    for s in range(min(m2, p1) + 1):
                        t = r + s
                        kk = k + l + t
                        nm1 = m1 - r + p1 - s
                        nm2 = m2 - s + p2 - r
                        if bound is not None and 2 * kk + nm1 + nm2 > bound:
                            continue
                        num = (falling(m1, r) * falling(m2, s)
                               * falling(p2, r) * falling(p1, s)
                               * comb(t, r) * (-1) ** s * fsign)
                        if num == 0:
                            continue
                        sc = Scalar(Fraction(num, factorial(t)))
                        sc = sc * ((-I) * Scalar(Fraction(1, 2))) ** t
                        key = (kk, nm1, nm2, nf)
                        add = base * sc
                        cur = out.get(key)
                        out[key] = add if cur is None else cur + add
        return WeylSection(out, bound, self.vars)

    def graded_commutator(self, other: "WeylSection") -> "WeylSection":
        """[a, b] = a o b - (-1)^{qa qb} b o a; needs pure form degrees."""
        ab = self.weyl_mul(other)
        ba = other.weyl_mul(self)
        sign = (-1) ** (self._pure_form_degree() * other._pure_form_degree())
        return ab - ba if sign == 1 else ab + ba

    def _pure_form_degree(self) -> int:
        degs = {len(f) for (_k, _m1, _m2, f) in self.terms}
        if len(degs) > 1:
            raise ValueError("mixed form degree has no graded sign")
        return degs.pop() if degs else 0

    def is_zero(self) -> bool:
        return not self.terms

    def eq_trunc(self, other: "WeylSection", min_common=2) -> bool:
        b = _minb(self.bound, other.bound)
        diff = self - other
        if b is not None and b < min_common:
            raise ValueError(f"vacuous comparison: common bound {b}")
        return diff.is_zero()

    def truncate(self, bound: int) -> "WeylSection":
        return WeylSection(self.terms, _minb(self.bound, bound), self.vars)

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            bits = []
            for key in sorted(self.terms, key=lambda t: (2 * t[0] + t[1] + t[2], t)):
                k, m1, m2, f = key
                tag = []
                if k:
                    tag.append(f"h^{k}")
                if m1:
                    tag.append(f"u1^{m1}")
                if m2:
                    tag.append(f"u2^{m2}")
                if f:
                    tag.append("dx" + "^dx".join(str(i) for i in f))
                bits.append(f"({self.terms[key]!r})" + ("*" + "*".join(tag) if tag else ""))
            body = " + ".join(bits)
        suffix = "" if self.bound is None else f" [deg<={self.bound}]"
        return body + suffix


class HbarSeries:
    """Polynomial in hbar with Laurent2 coefficients, known through `order`."""

    __slots__ = ("coeffs", "order", "vars")

    def __init__(self, coeffs=None, order=None, vars=("x1", "x2")):
        self.vars = tuple(vars)
        self.order = order
        clean = {}
        for k, c in (coeffs or {}).items():
            if not isinstance(c, Laurent2):
                c = Laurent2.const(c, self.vars)
            if order is not None and k > order:
                continue
            if not c.is_zero():
                clean[int(k)] = c
        self.coeffs = clean

    @staticmethod
    def of(f: Laurent2, order=None) -> "HbarSeries":
        return HbarSeries({0: f}, order, f.vars)

    def coeff(self, k: int) -> Laurent2:
        if self.order is not None and k > self.order:
            raise ValueError(f"hbar^{k} unknown at order {self.order}")
        return self.coeffs.get(k, Laurent2.zero(self.vars))

    def __add__(self, other):
        if not isinstance(other, HbarSeries):
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            cur = out.get(k)
            out[k] = c if cur is None else cur + c
        return HbarSeries(out, _minb(self.order, other.order), self.vars)

    def __neg__(self):
        return HbarSeries({k: -c for k, c in self.coeffs.items()},
                          self.order, self.vars)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar, Laurent2)):
            return HbarSeries({k: c * other for k, c in self.coeffs.items()},
                              self.order, self.vars)
        oa, ob = self.order, other.order
        va = min(self.coeffs, default=0)
        vb = min(other.coeffs, default=0)
        order = _minb(None if oa is None else oa + vb,
                      None if ob is None else ob + va)
        out = {}
        for k, a in self.coeffs.items():
            for l, b in other.coeffs.items():
                if order is not None and k + l > order:
                    continue
                cur = out.get(k + l)
                add = a * b
                out[k + l] = add if cur is None else cur + add
        return HbarSeries(out, order, self.vars)

    def is_zero(self) -> bool:
        return not self.coeffs

    def eq_trunc(self, other: "HbarSeries", order=None, min_common=4) -> bool:
        """Equality of hbar coefficients through `order`, each Laurent
        coefficient compared with eq_trunc when precision is limited."""
        o = _minb(self.order, other.order)
        if order is not None:
            o = order if o is None else min(o, order)
        if o is None:
            o = max(list(self.coeffs) + list(other.coeffs) + [0])
        for k in range(o + 1):
            a = self.coeffs.get(k, Laurent2.zero(self.vars))
            b = other.coeffs.get(k, Laurent2.zero(self.vars))
            if not a.eq_trunc(b, min_common=min_common):
                return False
        return True

    def __repr__(self):
        bits = [f"h^{k}*({self.coeffs[k]!r})" for k in sorted(self.coeffs)]
        body = " + ".join(bits) if bits else "0"
        return body + ("" if self.order is None else f" + O(h^{self.order + 1})")


# -- Moyal star product on base functions -------------------------------------


def moyal_coefficient(f: Laurent2, g: Laurent2, j: int) -> Laurent2:
    """The hbar^j coefficient of the Moyal product of f and g."""
    out = Laurent2.zero(f.vars)
    for r in range(j + 1):
        s = j - r
        fr = f
        for _ in range(r):
            fr = fr.partial1()
        for _ in range(s):
            fr = fr.partial2()
        gr = g
        for _ in range(r):
            gr = gr.partial2()
        for _ in range(s):
            gr = gr.partial1()
        num = comb(j, r) * (-1) ** s
        out = out + fr * gr * Scalar(Fraction(num))
    sc = Scalar(Fraction(1, factorial(j))) * ((-I) * Scalar(Fraction(1, 2))) ** j
    return out * sc


def moyal_star(f: Laurent2, g: Laurent2, order: int) -> HbarSeries:
    return HbarSeries({j: moyal_coefficient(f, g, j) for j in range(order + 1)},
                      order, f.vars)


# -- bidifferential operators from tensor words ---------------------------------


def x_word(h: Laurent2) -> Laurent2:
    """(1/x2) d/dx1, the first chart operator."""
    return h.x_op()


def y_pochhammer(h: Laurent2, r: int) -> Laurent2:
    """(-x2)^r (d/dx2)^r."""
    out = h
    for _ in range(r):
        out = out.partial2()
    return out.shift(0, r) * Scalar(Fraction((-1) ** r))


def gz_apply(n: int, f: Laurent2, g: Laurent2) -> Laurent2:
    """Sum over r of (-1)^r C(n,r) X^{n-r}(Y_(r) f) * X^r(Y_(n-r) g)."""
    out = Laurent2.zero(f.vars)
    for r in range(n + 1):
        a = y_pochhammer(f, r)
        for _ in range(n - r):
            a = x_word(a)
        b = y_pochhammer(g, n - r)
        for _ in range(r):
            b = x_word(b)
        out = out + a * b * Scalar(Fraction((-1) ** r * comb(n, r)))
    return out


def gz_equals_moyal(f: Laurent2, g: Laurent2, n_max: int, min_common=4) -> bool:
    """Moyal coefficients against (i/2)^n/n! times the tensor-word operator."""
    for n in range(n_max + 1):
        lhs = moyal_coefficient(f, g, n)
        sc = (I * Scalar(Fraction(1, 2))) ** n * Scalar(Fraction(1, factorial(n)))
        rhs = gz_apply(n, f, g) * sc
        if not lhs.eq_trunc(rhs, min_common=min_common):
            return False
    return True
