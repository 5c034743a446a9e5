"""Two-sided polynomial extension P |x H1 |x P and its chi evaluation.

P is the free abelian algebra on generators Z_0, Z_1, ... where H1 acts by
Y(Z_j) = (j+2) Z_j,  X(Z_j) = Z_{j+1}  (both as derivations), delta_k = 0.

An element is a sum of triples p |x h |x q with p, q monomials in the Z's
(stored as sorted index tuples) and h a PBW monomial of H1.  The product
moves the middle leg across the right factor with the double coproduct:

    (p1, h1, q1)(p2, h2, q2)
        = sum  p1 * h1_(1)(p2)  |x  h1_(2) h2  |x  h1_(3)(q2) * q1.

chi_eval sends Z_j on the left to multiplication by X^j(Omega) and on the
right to right multiplication by the same function, with the middle leg
acting through the crossed-product action.
"""

from __future__ import annotations

from collections import Counter

from .scalar import Scalar, ONE, half
from .laurent import Laurent2
from .hopf import H1Element, Mono, UNIT_MONO, _mono_product, _mono_coproduct, _addto, mono_weight
from .crossed import CrossedElement, act_mono

PEMPTY = ()

_COP3_CACHE: dict = {}


def _mono_coproduct3(m: Mono) -> dict:
    """(Delta x id)Delta of a PBW monomial as {(m1, m2, m3): Scalar}."""
    hit = _COP3_CACHE.get(m)
    if hit is None:
        hit = _mono_coproduct(m).delta_at(0).terms
        _COP3_CACHE[m] = hit
    return hit


def p_mul(p, q):
    return tuple(sorted(p + q))


def p_weight(p) -> int:
    # Z_j carries weight j + 2, matching Y(Z_j) = (j+2) Z_j.
    return sum(j + 2 for j in p)


def mono_act_p(mono: Mono, p) -> dict:
    """Act by a PBW monomial on a Z-monomial; returns {PMono: Scalar}."""
    gamma, a, b = mono
    if gamma:
        return {}
    cur = {tuple(p): ONE}
    for _ in range(b):
        nxt: dict = {}
        for pm, c in cur.items():
            for v, mult in Counter(pm).items():
                lst = list(pm)
                lst.remove(v)
                key = tuple(sorted(lst + [v + 1]))
                _addto(nxt, key, c * mult)
        cur = nxt
        if not cur:
            return {}
    if a:
        nxt = {}
        for pm, c in cur.items():
            eig = sum(j + 2 for j in pm)
            if eig:
                nxt[pm] = c * (eig ** a)
        cur = nxt
    return cur


class ExtendedElement:
    """Finite sum of p |x h |x q triples with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = Scalar.of(c)
            if not c.is_zero():
                clean[key] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @staticmethod
    def unit(c=1) -> "ExtendedElement":
        return ExtendedElement({(PEMPTY, UNIT_MONO, PEMPTY): Scalar.of(c)})

    @staticmethod
    def of_h1(h: H1Element) -> "ExtendedElement":
        return ExtendedElement({(PEMPTY, m, PEMPTY): c for m, c in h.terms.items()})

    @staticmethod
    def alpha(*indices) -> "ExtendedElement":
        """Left insertion of a product of Z generators."""
        return ExtendedElement({(tuple(sorted(indices)), UNIT_MONO, PEMPTY): ONE})

    @staticmethod
    def beta(*indices) -> "ExtendedElement":
        """Right insertion of a product of Z generators."""
        return ExtendedElement({(PEMPTY, UNIT_MONO, tuple(sorted(indices))): ONE})

    @staticmethod
    def zero() -> "ExtendedElement":
        return ExtendedElement({})

    # -- ring structure -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = ExtendedElement.unit(other)
        if not isinstance(other, ExtendedElement):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _addto(out, k, c)
        return ExtendedElement(out)

    __radd__ = __add__

    def __neg__(self):
        return ExtendedElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Scalar)):
            other = ExtendedElement.unit(other)
        if not isinstance(other, ExtendedElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "ExtendedElement":
        c = Scalar.of(c)
        return ExtendedElement({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if not isinstance(other, ExtendedElement):
            return NotImplemented
        out: dict = {}
        for (p1, m1, q1), c1 in self.terms.items():
            cop3 = _mono_coproduct3(m1)
            for (p2, m2, q2), c2 in other.terms.items():
                base = c1 * c2
                for (ma, mb, mc), cc in cop3.items():
                    pacts = mono_act_p(ma, p2)
                    if not pacts:
                        continue
                    qacts = mono_act_p(mc, q2)
                    if not qacts:
                        continue
                    mid = _mono_product(mb, m2)
                    for pk, pc in pacts.items():
                        np = p_mul(p1, pk)
                        for qk, qc in qacts.items():
                            nq = p_mul(qk, q1)
                            w = base * cc * pc * qc
                            for mk, mc2 in mid.items():
                                _addto(out, (np, mk, nq), w * mc2)
        return ExtendedElement(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = ExtendedElement.unit(other)
        if not isinstance(other, ExtendedElement):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(sorted(
            (k, tuple(c.to_json())) for k, c in self.terms.items())))

    def weight(self) -> int:
        return max((p_weight(p) + mono_weight(m) + p_weight(q)
                    for (p, m, q) in self.terms), default=0)

    def h1_part(self) -> H1Element:
        """Collect the terms with no Z factors on either side."""
        out = {}
        for (p, m, q), c in self.terms.items():
            if p == PEMPTY and q == PEMPTY:
                out[m] = c
        return H1Element(out)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (p, m, q) in sorted(self.terms):
            gamma, a, b = m
            hstr = "".join([f"d{n}." for n in gamma]) + "Y" * a + "X" * b
            hstr = hstr.rstrip(".") or "1"
            pstr = "".join(f"Z{j}." for j in p).rstrip(".") or ""
            qstr = "".join(f"Z{j}." for j in q).rstrip(".") or ""
            tag = (f"a[{pstr}]." if pstr else "") + hstr + (f".b[{qstr}]" if qstr else "")
            bits.append(f"{self.terms[(p, m, q)]!r}*{tag}")
        return " + ".join(bits)


def delta2_tilde_prime() -> ExtendedElement:
    """delta_2 - (1/2) delta_1^2 - alpha(Z_0) + beta(Z_0)."""
    d2p = H1Element.delta(2) - H1Element.delta(1) * H1Element.delta(1) * half(1)
    return ExtendedElement.of_h1(d2p) - ExtendedElement.alpha(0) + ExtendedElement.beta(0)


def rho_function(p, omega: Laurent2) -> Laurent2:
    """Evaluate a Z-monomial: the product of X^j(omega) over its factors."""
    out = Laurent2.const(1, omega.vars)
    for j in p:
        f = omega
        for _ in range(j):
            f = f.x_op()
        out = out * f
    return out


def chi_eval(e: ExtendedElement, a: CrossedElement, omega: Laurent2) -> CrossedElement:
    """chi(p |x h |x q)(a) = rho(p) * h(a) * rho(q), products in the crossed algebra."""
    out = CrossedElement.zero(a.vars)
    for (p, m, q), c in e.terms.items():
        mid = act_mono(m, a)
        if mid.is_zero():
            continue
        left = CrossedElement.of(rho_function(p, omega), vars=a.vars)
        right = CrossedElement.of(rho_function(q, omega), vars=a.vars)
        out = out + (left * mid * right).scale(c)
    return out


class ExtTensor2:
    """Two-leg tensor over the extended algebra; just enough for RC terms."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = Scalar.of(c)
            if not c.is_zero():
                clean[key] = c
        self.terms = clean

    @staticmethod
    def of(e1: ExtendedElement, e2: ExtendedElement) -> "ExtTensor2":
        out = {}
        for k1, c1 in e1.terms.items():
            for k2, c2 in e2.terms.items():
                _addto(out, (k1, k2), c1 * c2)
        return ExtTensor2(out)

    def __add__(self, other):
        if not isinstance(other, ExtTensor2):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _addto(out, k, c)
        return ExtTensor2(out)

    def __neg__(self):
        return ExtTensor2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExtTensor2":
        c = Scalar.of(c)
        return ExtTensor2({k: v * c for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, ExtTensor2):
            return NotImplemented
        return (self - other).is_zero()

    def eval_pair(self, a: CrossedElement, b: CrossedElement,
                  omega: Laurent2) -> CrossedElement:
        """Apply chi to each leg and multiply the results."""
        out = CrossedElement.zero(a.vars)
        for (k1, k2), c in self.terms.items():
            lhs = chi_eval(ExtendedElement({k1: ONE}), a, omega)
            rhs = chi_eval(ExtendedElement({k2: ONE}), b, omega)
            out = out + (lhs * rhs).scale(c)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (k1, k2) in sorted(self.terms):
            e1 = ExtendedElement({k1: ONE})
            e2 = ExtendedElement({k2: ONE})
            bits.append(f"{self.terms[(k1, k2)]!r}*({e1!r} ox {e2!r})")
        return " + ".join(bits)
