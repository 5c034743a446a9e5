"""Truncated q-expansions with exact rational coefficients.

A QSeries knows its coefficients for exponents 0..prec-1; everything at
q^prec and above is unknown. Standard inputs: Eisenstein series E2, E4,
E6 and the discriminant q*prod(1-q^n)^24 (no analytic normalization, so
all coefficients stay rational integers).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class QSeries:
    """Sparse q-expansion; coeffs maps exponent -> Fraction, known below prec."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec: int):
        if prec < 1:
            raise ValueError("precision must be at least 1")
        cl = {}
        for n, c in dict(coeffs).items():
            n = int(n)
            if n < 0:
                raise ValueError("q-series supports nonnegative exponents only")
            c = _frac(c)
            if n < prec and c != 0:
                cl[n] = c
        self.coeffs = cl
        self.prec = prec

    @staticmethod
    def const(c, prec: int) -> "QSeries":
        return QSeries({0: _frac(c)}, prec)

    @staticmethod
    def zero(prec: int) -> "QSeries":
        return QSeries({}, prec)

    def val(self) -> int:
        return min(self.coeffs) if self.coeffs else self.prec

    def coeff(self, n: int) -> Fraction:
        if n >= self.prec:
            raise ValueError(f"coefficient of q^{n} unknown at precision {self.prec}")
        return self.coeffs.get(n, Fraction(0))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.const(other, self.prec)
        p = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, Fraction(0)) + c
        return QSeries(out, p)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({n: -c for n, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.const(other, self.prec)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            return QSeries({n: a * c for n, a in self.coeffs.items()}, self.prec)
        p = min(self.prec + other.val(), other.prec + self.val())
        out = {}
        for n, a in self.coeffs.items():
            for m, b in other.coeffs.items():
                if n + m < p:
                    out[n + m] = out.get(n + m, Fraction(0)) + a * b
        return QSeries(out, p)

    __rmul__ = __mul__

    def pow_int(self, k: int) -> "QSeries":
        if k < 0:
            raise ValueError("negative powers not supported")
        out = QSeries.const(1, self.prec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def d_op(self) -> "QSeries":
        """D = q d/dq."""
        return QSeries({n: n * c for n, c in self.coeffs.items()}, self.prec)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.const(other, self.prec)
        if not isinstance(other, QSeries):
            return NotImplemented
        p = min(self.prec, other.prec)
        for n in set(self.coeffs) | set(other.coeffs):
            if n < p and self.coeffs.get(n, 0) != other.coeffs.get(n, 0):
                return False
        return True

    def __hash__(self):
        return hash((self.prec, tuple(sorted(self.coeffs.items()))))

    def truncate(self, prec: int) -> "QSeries":
        return QSeries(self.coeffs, min(self.prec, prec))

    def __repr__(self):
        bits = []
        for n in sorted(self.coeffs)[:8]:
            bits.append(f"{self.coeffs[n]}*q^{n}")
        body = " + ".join(bits) if bits else "0"
        more = " + ..." if len(self.coeffs) > 8 else ""
        return f"{body}{more} + O(q^{self.prec})"

    def to_json(self):
        return {"type": "qseries", "prec": self.prec,
                "coeffs": [[n, self.coeffs[n].numerator, self.coeffs[n].denominator]
                           for n in sorted(self.coeffs)]}

    @staticmethod
    def from_json(d) -> "QSeries":
        if d.get("type") != "qseries":
            raise ValueError("not a qseries AST")
        return QSeries({n: Fraction(num, den) for n, num, den in d["coeffs"]},
                       d["prec"])


def sigma(k: int, n: int) -> int:
    """Divisor power sum sigma_k(n)."""
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def eisenstein(k: int, prec: int) -> QSeries:
    """E2, E4, E6 with the 1 - (2k/B_k) sum normalization."""
    lead = {2: -24, 4: 240, 6: -504}
    if k not in lead:
        raise ValueError(f"unsupported Eisenstein weight {k}")
    coeffs = {0: Fraction(1)}
    for n in range(1, prec):
        coeffs[n] = Fraction(lead[k] * sigma(k - 1, n))
    return QSeries(coeffs, prec)


def delta_qexp(prec: int) -> QSeries:
    """q * prod_{n>=1} (1 - q^n)^24, the eta^24 expansion."""
    out = QSeries({1: 1}, prec)
    for n in range(1, prec):
        factor = {}
        j = 0
        while n * j < prec:
            factor[n * j] = Fraction((-1) ** j * comb(24, j))
            j += 1
            if j > 24:
                break
        out = out * QSeries(factor, prec)
    return out
