"""Sparse bivariate Laurent polynomials with exact Scalar coefficients.

Values are finite sums  c * v1^e1 * v2^e2  with integer exponents of either
sign. The default variables are (x1, x2); the same class also serves the
(x, y) and (p, q) charts since nothing depends on the names beyond printing
and serialization.

A value may carry an x1-precision `prec1`: the polynomial is then known
modulo O(v1^(prec1+1)), which is how pullbacks through truncated germs are
tracked. `prec1 is None` means exact. Terms above the precision are dropped
on normalization; arithmetic propagates the precision pessimistically.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import Scalar, ZERO, ONE

# comparisons between two truncated values must overlap in at least this
# many known x1-orders, otherwise the check would be vacuous
MIN_COMMON_PREC = 4


class Laurent2:
    __slots__ = ("vars", "terms", "prec1")

    def __init__(self, terms=None, vars=("x1", "x2"), prec1=None):
        self.vars = tuple(vars)
        self.prec1 = prec1
        t = {}
        if terms:
            for (e1, e2), c in (terms.items() if isinstance(terms, dict) else terms):
                c = Scalar.of(c)
                if c.is_zero():
                    continue
                if prec1 is not None and e1 > prec1:
                    continue
                k = (e1, e2)
                if k in t:
                    s = t[k] + c
                    if s.is_zero():
                        del t[k]
                    else:
                        t[k] = s
                else:
                    t[k] = c
        self.terms = t

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(c, vars=("x1", "x2")) -> "Laurent2":
        return Laurent2({(0, 0): Scalar.of(c)}, vars=vars)

    @staticmethod
    def zero(vars=("x1", "x2")) -> "Laurent2":
        return Laurent2({}, vars=vars)

    @staticmethod
    def monomial(e1: int, e2: int, c=1, vars=("x1", "x2")) -> "Laurent2":
        return Laurent2({(e1, e2): Scalar.of(c)}, vars=vars)

    @staticmethod
    def var1(vars=("x1", "x2")) -> "Laurent2":
        return Laurent2.monomial(1, 0, 1, vars)

    @staticmethod
    def var2(vars=("x1", "x2")) -> "Laurent2":
        return Laurent2.monomial(0, 1, 1, vars)

    def _check_vars(self, other: "Laurent2"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    # -- precision bookkeeping -------------------------------------------

    def val1(self):
        """Minimum x1-exponent among stored terms (None if zero)."""
        if not self.terms:
            return None
        return min(e1 for (e1, _) in self.terms)

    @staticmethod
    def _add_prec(pa, pb):
        if pa is None:
            return pb
        if pb is None:
            return pa
        return min(pa, pb)

    def _mul_prec(self, other: "Laurent2"):
        # product of something known mod v1^(p+1) with something of
        # valuation v is known mod v1^(p+v+1)
        pa, pb = self.prec1, other.prec1
        if pa is None and pb is None:
            return None
        cands = []
        if pa is not None:
            vb = other.val1()
            cands.append(pa + (vb if vb is not None else 0))
        if pb is not None:
            va = self.val1()
            cands.append(pb + (va if va is not None else 0))
        return min(cands)

    # -- ring ops ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = Laurent2.const(other, self.vars)
        self._check_vars(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            if k in t:
                s = t[k] + c
                if s.is_zero():
                    del t[k]
                else:
                    t[k] = s
            else:
                t[k] = c
        return Laurent2(t, self.vars, self._add_prec(self.prec1, other.prec1))

    __radd__ = __add__

    def __neg__(self):
        return Laurent2({k: -c for k, c in self.terms.items()}, self.vars, self.prec1)

    def __sub__(self, other):
        if isinstance(other, (int, Scalar)):
            other = Laurent2.const(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            c = Scalar.of(other)
            return Laurent2({k: v * c for k, v in self.terms.items()},
                            self.vars, self.prec1)
        self._check_vars(other)
        prec = self._mul_prec(other)
        t = {}
        for (a1, a2), ca in self.terms.items():
            for (b1, b2), cb in other.terms.items():
                e1 = a1 + b1
                if prec is not None and e1 > prec:
                    continue
                k = (e1, a2 + b2)
                c = ca * cb
                if k in t:
                    t[k] = t[k] + c
                else:
                    t[k] = c
        return Laurent2(t, self.vars, prec)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("use explicit inverse monomials for negative powers")
        out = Laurent2.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- calculus -----------------------------------------------------------

    def partial1(self) -> "Laurent2":
        prec = None if self.prec1 is None else self.prec1 - 1
        t = {}
        for (e1, e2), c in self.terms.items():
            if e1 == 0:
                continue
            t[(e1 - 1, e2)] = c * e1
        return Laurent2(t, self.vars, prec)

    def partial2(self) -> "Laurent2":
        t = {}
        for (e1, e2), c in self.terms.items():
            if e2 == 0:
                continue
            t[(e1, e2 - 1)] = c * e2
        return Laurent2(t, self.vars, self.prec1)

    def shift(self, d1: int, d2: int) -> "Laurent2":
        """Multiply by v1^d1 v2^d2."""
        prec = None if self.prec1 is None else self.prec1 + d1
        return Laurent2({(e1 + d1, e2 + d2): c for (e1, e2), c in self.terms.items()},
                        self.vars, prec)

    def x_op(self) -> "Laurent2":
        """X = (1/x2) d/dx1, the operator y d/dx in the y = 1/x2 reading."""
        return self.partial1().shift(0, -1)

    def y_op(self) -> "Laurent2":
        """Y = -x2 d/dx2, the operator y d/dy in the y = 1/x2 reading."""
        return -self.partial2().shift(0, 1)

    # -- comparison ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = Laurent2.const(other, self.vars)
        if not isinstance(other, Laurent2):
            return NotImplemented
        return (self.vars == other.vars and self.prec1 == other.prec1
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, self.prec1, frozenset(self.terms.items())))

    def eq_trunc(self, other: "Laurent2", min_common=MIN_COMMON_PREC) -> bool:
        """Equality up to the common x1-precision.

        Exact values compare exactly. If either side is truncated, both are
        compared modulo the smaller precision, which must leave at least
        `min_common` known orders above the lower valuation or the check is
        rejected as vacuous.
        """
        if isinstance(other, (int, Scalar)):
            other = Laurent2.const(other, self.vars)
        self._check_vars(other)
        p = self._add_prec(self.prec1, other.prec1)
        if p is None:
            return self.terms == other.terms
        diff = (self - other).terms
        keep = {k: c for k, c in diff.items() if k[0] <= p}
        vals = [v for v in (self.val1(), other.val1()) if v is not None]
        base = min(vals) if vals else 0
        if p - base < min_common:
            raise ValueError(
                f"vacuous comparison: precision {p} leaves fewer than "
                f"{min_common} orders above valuation {base}")
        return not keep

    # -- io ----------------------------------------------------------------

    def truncate1(self, prec1) -> "Laurent2":
        p = self._add_prec(self.prec1, prec1)
        return Laurent2(self.terms, self.vars, p)

    def subst_scalar(self, v1: Scalar, v2: Scalar) -> Scalar:
        """Evaluate at scalar arguments (exponents may be negative)."""
        out = ZERO
        for (e1, e2), c in self.terms.items():
            out = out + c * (v1 ** e1) * (v2 ** e2)
        return out

    def coeff(self, e1: int, e2: int) -> Scalar:
        return self.terms.get((e1, e2), ZERO)

    def __repr__(self):
        if not self.terms:
            s = "0"
        else:
            bits = []
            for (e1, e2) in sorted(self.terms):
                c = self.terms[(e1, e2)]
                factors = []
                if e1:
                    factors.append(f"{self.vars[0]}^{e1}" if e1 != 1 else self.vars[0])
                if e2:
                    factors.append(f"{self.vars[1]}^{e2}" if e2 != 1 else self.vars[1])
                if not factors or c != ONE:
                    factors.insert(0, repr(c))
                bits.append("*".join(factors))
            s = " + ".join(bits)
        if self.prec1 is not None:
            s += f" + O({self.vars[0]}^{self.prec1 + 1})"
        return s

    def to_json(self):
        out = {"type": "laurent", "vars": list(self.vars),
               "terms": [[e1, e2, self.terms[(e1, e2)].to_json()]
                         for (e1, e2) in sorted(self.terms)]}
        if self.prec1 is not None:
            out["prec1"] = self.prec1
        return out

    @staticmethod
    def from_json(d) -> "Laurent2":
        if d.get("type") != "laurent":
            raise ValueError("not a laurent AST")
        terms = {(int(e1), int(e2)): Scalar.from_json(c) for e1, e2, c in d["terms"]}
        return Laurent2(terms, tuple(d.get("vars", ("x1", "x2"))), d.get("prec1"))


def poly_arith(a: Laurent2, b, op: str) -> Laurent2:
    """Dispatcher used by the CLI: add, mul, partial_x1, partial_x2."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "partial_x1":
        return a.partial1()
    if op == "partial_x2":
        return a.partial2()
    raise ValueError(f"unknown op {op!r}")
