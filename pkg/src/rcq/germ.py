"""Diffeomorphism germs at 0 and truncated univariate series.

A germ is either a truncated power series x -> c1*x + c2*x^2 + ... with
c1 != 0 (based at 0), or an exact Moebius map (a*x+b)/(c*x+d) carried in
closed form. Affine maps are Moebius maps with c = 0; linear maps have
b = c = 0. Exact tags compose and invert by 2x2 matrix algebra; series
germs by truncated substitution and coefficient recursion.

The lift of a germ to the half-plane is (x1, x2) -> (phi(x1), x2/phi'(x1)),
and `pullback` composes a Laurent2 with that lift. Pullback through a
truncated germ yields a Laurent2 carrying an x1-precision.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import Scalar, ZERO, ONE
from .laurent import Laurent2


class Series1:
    """Truncated univariate power series; coeffs[k] is the x^k coefficient.

    `prec` means the coefficients 0..prec are correct; everything above is
    unknown. Operations propagate precision with valuation awareness.
    """

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec: int):
        cs = list(coeffs)[:prec + 1]
        cs += [ZERO] * (prec + 1 - len(cs))
        self.coeffs = [Scalar.of(c) for c in cs]
        self.prec = prec

    @staticmethod
    def const(c, prec: int) -> "Series1":
        return Series1([Scalar.of(c)], prec)

    @staticmethod
    def x(prec: int) -> "Series1":
        return Series1([ZERO, ONE], prec)

    def val(self) -> int:
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return self.prec + 1  # zero to known precision

    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = Series1.const(other, self.prec)
        p = min(self.prec, other.prec)
        return Series1([self.coeffs[k] + other.coeffs[k] for k in range(p + 1)], p)

    __radd__ = __add__

    def __neg__(self):
        return Series1([-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        if isinstance(other, (int, Scalar)):
            other = Series1.const(other, self.prec)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            c = Scalar.of(other)
            return Series1([a * c for a in self.coeffs], self.prec)
        p = min(self.prec + other.val(), other.prec + self.val())
        p = min(p, self.prec + other.prec)  # never exceed joint information
        out = [ZERO] * (p + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero() or i > p:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > p:
                    break
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Series1(out, p)

    __rmul__ = __mul__

    def derive(self) -> "Series1":
        if self.prec == 0:
            return Series1([], 0)
        return Series1([self.coeffs[k] * k for k in range(1, self.prec + 1)],
                       self.prec - 1)

    def reciprocal(self) -> "Series1":
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise ValueError("reciprocal of a series with zero constant term")
        inv0 = ONE / c0
        out = [inv0] + [ZERO] * self.prec
        for k in range(1, self.prec + 1):
            s = ZERO
            for j in range(1, k + 1):
                s = s + self.coeffs[j] * out[k - j]
            out[k] = -inv0 * s
        return Series1(out, self.prec)

    def pow_int(self, n: int) -> "Series1":
        if n < 0:
            return self.reciprocal().pow_int(-n)
        out = Series1.const(1, self.prec)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def compose(self, inner: "Series1") -> "Series1":
        """self(inner(x)); inner must have zero constant term."""
        if not inner.coeffs[0].is_zero():
            raise ValueError("inner series must fix 0")
        p = min(self.prec, inner.prec)
        out = Series1.const(ZERO, p)
        for k in range(min(self.prec, p), -1, -1):
            out = out * inner + Series1.const(self.coeffs[k], p)
        return out

    def rev(self) -> "Series1":
        """Compositional inverse of a series with val 1."""
        if not self.coeffs[0].is_zero() or self.coeffs[1].is_zero():
            raise ValueError("compositional inverse needs f(0)=0, f'(0)!=0")
        a1 = self.coeffs[1]
        inv_a1 = ONE / a1
        g = [ZERO, inv_a1] + [ZERO] * (self.prec - 1)
        for n in range(2, self.prec + 1):
            cur = Series1(g[:n], self.prec)
            err = self.compose(cur).coeffs[n]
            g[n] = -err * inv_a1
        return Series1(g, self.prec)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Series1):
            return NotImplemented
        p = min(self.prec, other.prec)
        return all((self.coeffs[k] - other.coeffs[k]).is_zero() for k in range(p + 1))

    def __repr__(self):
        bits = [f"{c!r}*x^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return (" + ".join(bits) if bits else "0") + f" + O(x^{self.prec + 1})"


DEFAULT_TRUNC = 10


class DiffeoGerm:
    """A germ of a diffeomorphism fixing 0, or an exact Moebius map."""

    __slots__ = ("tag", "series", "trunc", "_cache")

    def __init__(self, series=None, trunc=DEFAULT_TRUNC, tag=None):
        self._cache = {}
        if tag is not None:
            name, a, b, c, d = tag
            if name != "moebius":
                raise ValueError(f"unknown tag {name!r}")
            a, b, c, d = (Scalar.of(v) for v in (a, b, c, d))
            det = a * d - b * c
            if det.is_zero():
                raise ValueError("singular Moebius matrix")
            # canonical scale: last nonzero of (d, c) becomes 1
            s = d if not d.is_zero() else c
            a, b, c, d = a / s, b / s, c / s, d / s
            self.tag = ("moebius", a, b, c, d)
            self.series = None
            self.trunc = trunc
        else:
            if isinstance(series, Series1):
                coeffs = {k: c for k, c in enumerate(series.coeffs) if not c.is_zero()}
                trunc = min(trunc, series.prec)
            else:
                coeffs = {int(k): Scalar.of(v) for k, v in dict(series).items()
                          if not Scalar.of(v).is_zero()}
            if coeffs.get(0, ZERO) != ZERO:
                raise ValueError("series germs must fix 0")
            if coeffs.get(1, ZERO) == ZERO:
                raise ValueError("germ needs invertible derivative at 0")
            self.tag = None
            self.series = {k: v for k, v in coeffs.items() if 1 <= k <= trunc}
            self.trunc = trunc

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity() -> "DiffeoGerm":
        return DiffeoGerm(tag=("moebius", 1, 0, 0, 1))

    @staticmethod
    def affine(a, b) -> "DiffeoGerm":
        """x -> a*x + b (exact)."""
        return DiffeoGerm(tag=("moebius", a, b, 0, 1))

    @staticmethod
    def linear(a) -> "DiffeoGerm":
        return DiffeoGerm.affine(a, 0)

    @staticmethod
    def moebius(a, b, c, d) -> "DiffeoGerm":
        return DiffeoGerm(tag=("moebius", a, b, c, d))

    @staticmethod
    def from_coeffs(coeffs, trunc=DEFAULT_TRUNC) -> "DiffeoGerm":
        """coeffs maps degree -> coefficient, degree 1 required."""
        return DiffeoGerm(series=coeffs, trunc=trunc)

    # -- structure ----------------------------------------------------------

    def is_exact(self) -> bool:
        return self.tag is not None

    def is_affine(self) -> bool:
        return self.tag is not None and self.tag[3].is_zero()

    def is_linear(self) -> bool:
        return self.is_affine() and self.tag[2].is_zero()

    def is_identity(self) -> bool:
        return (self.is_linear() and self.tag[1] == ONE)

    def fixes_zero(self) -> bool:
        if self.tag is None:
            return True
        return self.tag[2].is_zero()  # b == 0

    def key(self):
        if self.tag is not None:
            _, a, b, c, d = self.tag
            return ("m", tuple(tuple(v.to_json()) for v in (a, b, c, d)))
        return ("s", self.trunc,
                tuple((k, tuple(self.series[k].to_json()))
                      for k in sorted(self.series)))

    def __eq__(self, other):
        return isinstance(other, DiffeoGerm) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.tag is not None:
            _, a, b, c, d = self.tag
            if c.is_zero():
                if b.is_zero():
                    return f"germ({a!r}*x)"
                return f"germ({a!r}*x + {b!r})"
            return f"germ(({a!r}*x + {b!r})/({c!r}*x + {d!r}))"
        bits = [f"{self.series[k]!r}*x^{k}" for k in sorted(self.series)]
        return "germ(" + " + ".join(bits) + f" + O(x^{self.trunc + 1}))"

    # -- series views ---------------------------------------------------------

    def series_view(self, prec=None) -> Series1:
        """The germ as a truncated series around 0 (includes any constant term)."""
        p = self.trunc if prec is None else prec
        if self.tag is None:
            cs = [ZERO] * (p + 1)
            for k, c in self.series.items():
                if k <= p:
                    cs[k] = c
            return Series1(cs, min(p, self.trunc))
        _, a, b, c, d = self.tag
        num = Series1([b, a], p)
        den = Series1([d, c], p)
        return num * den.reciprocal()

    def derivative_series(self, order=1, prec=None) -> Series1:
        p = self.trunc if prec is None else prec
        s = self.series_view(p + order)
        for _ in range(order):
            s = s.derive()
        return s

    # -- group structure --------------------------------------------------------

    def compose(self, other: "DiffeoGerm") -> "DiffeoGerm":
        """self after other: x -> self(other(x))."""
        if self.tag is not None and other.tag is not None:
            _, a1, b1, c1, d1 = self.tag
            _, a2, b2, c2, d2 = other.tag
            return DiffeoGerm(tag=("moebius",
                                   a1 * a2 + b1 * c2, a1 * b2 + b1 * d2,
                                   c1 * a2 + d1 * c2, c1 * b2 + d1 * d2),
                              trunc=max(self.trunc, other.trunc))
        if self.is_identity():
            return other
        if other.is_identity():
            return self
        if not other.fixes_zero() or not self.fixes_zero():
            raise ValueError("general germs compose only at a shared base point 0")
        # exact tags do not limit the precision of a mixed composition
        truncs = [g.trunc for g in (self, other) if g.tag is None]
        t = min(truncs)
        f = self.series_view(t)
        g = other.series_view(t)
        return DiffeoGerm(series=f.compose(g), trunc=t)

    def inverse(self) -> "DiffeoGerm":
        if "inv" in self._cache:
            return self._cache["inv"]
        if self.tag is not None:
            _, a, b, c, d = self.tag
            out = DiffeoGerm(tag=("moebius", d, -b, -c, a), trunc=self.trunc)
        else:
            out = DiffeoGerm(series=self.series_view(self.trunc).rev(),
                             trunc=self.trunc)
        self._cache["inv"] = out
        out._cache["inv"] = self
        return out

    # -- differential data -------------------------------------------------------

    def log_deriv_second(self) -> Series1:
        """(phi''/phi') as a series; zero for affine maps."""
        p = self.trunc
        if self.is_affine():
            return Series1.const(0, p)
        if self.tag is not None:
            # phi = (a x + b)/(c x + d): phi''/phi' = -2c/(c x + d)
            _, a, b, c, d = self.tag
            den = Series1([d, c], p)
            return den.reciprocal() * (Scalar.of(-2) * c)
        d1 = self.derivative_series(1, p)
        d2 = self.derivative_series(2, p)
        return d2 * d1.reciprocal()

    def schwarzian(self) -> Series1:
        """(phi''' phi' - (3/2) phi''^2)/phi'^2, zero exactly for Moebius tags."""
        p = self.trunc
        if self.tag is not None:
            return Series1.const(0, p)
        d1 = self.derivative_series(1, p)
        d2 = self.derivative_series(2, p)
        d3 = self.derivative_series(3, p)
        num = d3 * d1 - Scalar(Fraction(3, 2)) * (d2 * d2)
        return num * (d1 * d1).reciprocal()

    def c_series(self) -> Series1:
        """((phi^-1)''/(phi^-1)') as a series: the delta_1 cocycle data."""
        if "c_series" not in self._cache:
            self._cache["c_series"] = self.inverse().log_deriv_second()
        return self._cache["c_series"]

    def c_derivative(self, k: int) -> Series1:
        key = ("c_deriv", k)
        if key not in self._cache:
            s = self.c_series()
            for _ in range(k):
                s = s.derive()
            self._cache[key] = s
        return self._cache[key]

    # -- pullback through the lift ---------------------------------------------

    def _phi_power(self, n: int):
        """phi^n as (exact: bool, val: int, unit: Series1)."""
        key = ("pow", n)
        if key in self._cache:
            return self._cache[key]
        p = self.trunc
        if self.is_linear():
            _, a, _, _, _ = self.tag
            out = (True, n, Series1.const(a ** n, p))
        elif self.is_affine() and n >= 0:
            f = self.series_view(max(p, n))  # a*x + b exactly
            out = (True, 0, f.pow_int(n))
        elif self.fixes_zero():
            f = self.series_view(p)
            unit = Series1(f.coeffs[1:], p - 1)  # phi/x
            out = (False, n, unit.pow_int(n))
        else:
            f = self.series_view(p)
            out = (False, 0, f.pow_int(n))
        self._cache[key] = out
        return out

    def _dphi_power(self, n: int):
        """(phi')^n as (exact: bool, unit: Series1)."""
        key = ("dpow", n)
        if key in self._cache:
            return self._cache[key]
        p = self.trunc
        if self.is_affine():
            # tag is normalized with d = 1, so phi' is the constant a
            _, a, _, _, _ = self.tag
            out = (True, Series1.const(a ** n, p))
        else:
            d1 = self.derivative_series(1, p)
            out = (False, d1.pow_int(n))
        self._cache[key] = out
        return out

    def pullback_monomial(self, e1: int, e2: int, vars=("x1", "x2")) -> Laurent2:
        """x1^e1 x2^e2 composed with the lift: phi^e1 (phi')^(-e2) x2^e2."""
        key = ("pbm", e1, e2, vars)
        if key in self._cache:
            return self._cache[key]
        ex1, v, u1 = self._phi_power(e1)
        ex2, u2 = self._dphi_power(-e2)
        u = u1 * u2
        exact = ex1 and ex2
        terms = {}
        for k, c in enumerate(u.coeffs):
            if not c.is_zero():
                terms[(v + k, e2)] = c
        prec1 = None if exact else v + u.prec
        out = Laurent2(terms, vars, prec1)
        self._cache[key] = out
        return out

    def pullback(self, f: Laurent2) -> Laurent2:
        """f composed with the lift (x1, x2) -> (phi(x1), x2/phi'(x1))."""
        out = Laurent2.zero(f.vars)
        for (e1, e2), c in f.terms.items():
            out = out + self.pullback_monomial(e1, e2, f.vars) * c
        if f.prec1 is not None:
            out = out.truncate1(f.prec1)
        return out

    # -- io -------------------------------------------------------------------

    def to_json(self):
        if self.tag is not None:
            _, a, b, c, d = self.tag
            return {"type": "germ", "trunc": self.trunc, "series": None,
                    "tag": ["moebius", a.to_json(), b.to_json(),
                            c.to_json(), d.to_json()]}
        return {"type": "germ", "trunc": self.trunc,
                "series": [[k, self.series[k].to_json()] for k in sorted(self.series)],
                "tag": None}

    @staticmethod
    def from_json(d) -> "DiffeoGerm":
        if d.get("type") != "germ":
            raise ValueError("not a germ AST")
        if d.get("tag"):
            name, a, b, c, d4 = d["tag"]
            return DiffeoGerm(tag=(name, Scalar.from_json(a), Scalar.from_json(b),
                                   Scalar.from_json(c), Scalar.from_json(d4)),
                              trunc=d.get("trunc", DEFAULT_TRUNC))
        series = {int(k): Scalar.from_json(c) for k, c in d["series"]}
        return DiffeoGerm(series=series, trunc=d.get("trunc", DEFAULT_TRUNC))


def series_to_laurent(s: Series1, e2: int = 0, vars=("x1", "x2"),
                      exact: bool = False) -> Laurent2:
    """Embed a univariate series in the first variable, times x2^e2."""
    terms = {(k, e2): c for k, c in enumerate(s.coeffs) if not c.is_zero()}
    return Laurent2(terms, vars, None if exact else s.prec)


def germ_compose(f: DiffeoGerm, g: DiffeoGerm) -> DiffeoGerm:
    return f.compose(g)


def germ_invert(f: DiffeoGerm) -> DiffeoGerm:
    return f.inverse()
