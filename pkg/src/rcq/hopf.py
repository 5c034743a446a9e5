"""The Hopf algebra H1 on generators X, Y, delta_n in a PBW basis.

Relations: [Y, X] = X, [X, delta_n] = delta_{n+1}, [Y, delta_n] = n delta_n,
and the delta_n commute. Basis monomials are written delta^gamma Y^a X^b with
gamma a sorted multiset of delta indices. Coproduct: Y and delta_1 are
primitive, Delta(X) = X ox 1 + 1 ox X + delta_1 ox Y, and higher delta
coproducts follow from delta_{n+1} = [X, delta_n]. The antipode is determined
by S(X) = -X + delta_1 Y, S(Y) = -Y, S(delta_1) = -delta_1.

TensorElement holds elements of H1^{ox n} with slotwise multiplication; the
coproduct applied in a chosen slot raises the arity by one, which is what the
Hochschild coboundary needs.
"""

from __future__ import annotations

from math import comb

from .scalar import Scalar, ZERO, ONE

Mono = tuple  # (gamma: sorted tuple of ints >= 1, y_exp: int, x_exp: int)
UNIT_MONO: Mono = ((), 0, 0)

_MONO_PROD_CACHE: dict = {}
_COPROD_CACHE: dict = {}
_ANTIPODE_CACHE: dict = {}


def mono_weight(m: Mono) -> int:
    """Grading with X of weight 1, delta_n of weight n, Y of weight 0."""
    gamma, _a, b = m
    return sum(gamma) + b


def _addto(d: dict, key, c: Scalar):
    cur = d.get(key)
    s = c if cur is None else cur + c
    if s.is_zero():
        d.pop(key, None)
    else:
        d[key] = s


def _leftmul_gen(gen, mono: Mono) -> dict:
    """Left-multiply a PBW monomial by a single generator; dict mono -> Scalar."""
    gamma, a, b = mono
    out: dict = {}
    if gen[0] == "d":
        n = gen[1]
        _addto(out, (tuple(sorted(gamma + (n,))), a, b), ONE)
        return out
    if gen[0] == "Y":
        # Y delta^gamma = delta^gamma (Y + |gamma|)
        w = sum(gamma)
        _addto(out, (gamma, a + 1, b), ONE)
        if w:
            _addto(out, (gamma, a, b), Scalar(w))
        return out
    if gen[0] == "X":
        # X delta^gamma = delta^gamma X + sum_i (bump gamma_i); X Y^a = (Y-1)^a X
        for j in range(a + 1):
            c = comb(a, j) * (-1) ** (a - j)
            _addto(out, (gamma, j, b + 1), Scalar(c))
        for i in range(len(gamma)):
            bumped = tuple(sorted(gamma[:i] + (gamma[i] + 1,) + gamma[i + 1:]))
            _addto(out, (bumped, a, b), ONE)
        return out
    raise ValueError(f"unknown generator {gen!r}")


def _word(mono: Mono):
    gamma, a, b = mono
    return ([("d", n) for n in gamma] + [("Y",)] * a + [("X",)] * b)


def _mono_product(m1: Mono, m2: Mono) -> dict:
    key = (m1, m2)
    hit = _MONO_PROD_CACHE.get(key)
    if hit is not None:
        return hit
    cur = {m2: ONE}
    for gen in reversed(_word(m1)):
        nxt: dict = {}
        for mono, c in cur.items():
            for mono2, c2 in _leftmul_gen(gen, mono).items():
                _addto(nxt, mono2, c * c2)
        cur = nxt
    _MONO_PROD_CACHE[key] = cur
    return cur


class H1Element:
    """Finite linear combination of PBW monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for m, c in (terms or {}).items():
            c = Scalar.of(c)
            if not c.is_zero():
                clean[m] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @staticmethod
    def unit(c=1) -> "H1Element":
        return H1Element({UNIT_MONO: Scalar.of(c)})

    @staticmethod
    def x() -> "H1Element":
        return H1Element({((), 0, 1): ONE})

    @staticmethod
    def y() -> "H1Element":
        return H1Element({((), 1, 0): ONE})

    @staticmethod
    def delta(n: int) -> "H1Element":
        if n < 1:
            raise ValueError("delta index must be >= 1")
        return H1Element({((n,), 0, 0): ONE})

    @staticmethod
    def monomial(gamma, a: int, b: int, c=1) -> "H1Element":
        return H1Element({(tuple(sorted(gamma)), a, b): Scalar.of(c)})

    # -- ring structure -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = H1Element.unit(other)
        if not isinstance(other, H1Element):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            _addto(out, m, c)
        return H1Element(out)

    __radd__ = __add__

    def __neg__(self):
        return H1Element({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Scalar)):
            other = H1Element.unit(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            c = Scalar.of(other)
            return H1Element({m: v * c for m, v in self.terms.items()})
        if not isinstance(other, H1Element):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                for m, cm in _mono_product(m1, m2).items():
                    _addto(out, m, c * cm)
        return H1Element(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self * other
        return NotImplemented

    def commutator(self, other: "H1Element") -> "H1Element":
        return self * other - other * self

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = H1Element.unit(other)
        if not isinstance(other, H1Element):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(sorted((m, tuple(c.to_json()))
                                 for m, c in self.terms.items())))

    def weight(self) -> int:
        """Largest monomial weight present (0 for the zero element)."""
        return max((mono_weight(m) for m in self.terms), default=0)

    # -- Hopf structure -------------------------------------------------------

    def counit(self) -> Scalar:
        return self.terms.get(UNIT_MONO, ZERO)

    def coproduct(self) -> "TensorElement":
        out = TensorElement({}, 2)
        for m, c in self.terms.items():
            out = out + _mono_coproduct(m).scale(c)
        return out

    def antipode(self) -> "H1Element":
        out = H1Element({})
        for m, c in self.terms.items():
            out = out + _mono_antipode(m) * c
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda t: (mono_weight(t), t)):
            gamma, a, b = m
            tag = "".join([f"d{n}." for n in gamma]) + "Y" * a + "X" * b
            tag = tag.rstrip(".") or "1"
            bits.append(f"{self.terms[m]!r}*{tag}")
        return " + ".join(bits)

    def to_json(self):
        return {"type": "h1", "terms": [
            {"delta": list(g), "y": a, "x": b, "c": self.terms[(g, a, b)].to_json()}
            for (g, a, b) in sorted(self.terms)]}

    @staticmethod
    def from_json(d) -> "H1Element":
        if d.get("type") != "h1":
            raise ValueError("not an h1 AST")
        terms = {}
        for t in d["terms"]:
            terms[(tuple(t["delta"]), t["y"], t["x"])] = Scalar.from_json(t["c"])
        return H1Element(terms)


class TensorElement:
    """Element of H1^{ox arity}: dict[tuple of monomials -> Scalar]."""

    __slots__ = ("terms", "arity")

    def __init__(self, terms=None, arity=2):
        self.arity = arity
        clean = {}
        for key, c in (terms or {}).items():
            c = Scalar.of(c)
            if len(key) != arity:
                raise ValueError("key arity mismatch")
            if not c.is_zero():
                clean[key] = c
        self.terms = clean

    @staticmethod
    def of(*factors: H1Element) -> "TensorElement":
        n = len(factors)
        out = {(): ONE}
        for f in factors:
            nxt = {}
            for key, c in out.items():
                for m, cm in f.terms.items():
                    nxt[key + (m,)] = c * cm
            out = nxt
        return TensorElement(out, n)

    @staticmethod
    def zero(arity=2) -> "TensorElement":
        return TensorElement({}, arity)

    @staticmethod
    def unit(arity=2) -> "TensorElement":
        return TensorElement({(UNIT_MONO,) * arity: ONE}, arity)

    def __add__(self, other):
        if not isinstance(other, TensorElement) or other.arity != self.arity:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _addto(out, k, c)
        return TensorElement(out, self.arity)

    def __neg__(self):
        return TensorElement({k: -c for k, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = Scalar.of(c)
        return TensorElement({k: v * c for k, v in self.terms.items()}, self.arity)

    def __mul__(self, other):
        """Slotwise product in H1^{ox arity}."""
        if not isinstance(other, TensorElement) or other.arity != self.arity:
            return NotImplemented
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c = c1 * c2
                parts = [_mono_product(a, b) for a, b in zip(k1, k2)]
                keys = [()]
                coefs = [c]
                for p in parts:
                    nkeys, ncoefs = [], []
                    for base, bc in zip(keys, coefs):
                        for m, cm in p.items():
                            nkeys.append(base + (m,))
                            ncoefs.append(bc * cm)
                    keys, coefs = nkeys, ncoefs
                for kk, cc in zip(keys, coefs):
                    _addto(out, kk, cc)
        return TensorElement(out, self.arity)

    def commutator(self, other: "TensorElement") -> "TensorElement":
        return self * other - other * self

    def delta_at(self, i: int) -> "TensorElement":
        """Apply the coproduct in slot i (0-based): arity n -> n+1."""
        out: dict = {}
        for key, c in self.terms.items():
            cop = _mono_coproduct(key[i])
            for (m1, m2), cc in cop.terms.items():
                nk = key[:i] + (m1, m2) + key[i + 1:]
                _addto(out, nk, c * cc)
        return TensorElement(out, self.arity + 1)

    def unit_tensor_left(self) -> "TensorElement":
        return TensorElement({(UNIT_MONO,) + k: c for k, c in self.terms.items()},
                             self.arity + 1)

    def unit_tensor_right(self) -> "TensorElement":
        return TensorElement({k + (UNIT_MONO,): c for k, c in self.terms.items()},
                             self.arity + 1)

    def tensor(self, other: "TensorElement") -> "TensorElement":
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                _addto(out, k1 + k2, c1 * c2)
        return TensorElement(out, self.arity + other.arity)

    def flip(self) -> "TensorElement":
        if self.arity != 2:
            raise ValueError("flip needs arity 2")
        return TensorElement({(b, a): c for (a, b), c in self.terms.items()}, 2)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.arity == other.arity and (self - other).is_zero()

    def __hash__(self):
        return hash((self.arity, tuple(sorted(
            (k, tuple(c.to_json())) for k, c in self.terms.items()))))

    def weight(self) -> int:
        return max((sum(mono_weight(m) for m in k) for k in self.terms), default=0)

    def act2(self, act, f, g):
        """Evaluate an arity-2 element on a pair via act(mono, value)."""
        if self.arity != 2:
            raise ValueError("act2 needs arity 2")
        out = None
        for (m1, m2), c in self.terms.items():
            a = act(m1, f)
            b = act(m2, g)
            piece = a * b * c
            out = piece if out is None else out + piece
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms):
            tags = []
            for m in key:
                gamma, a, b = m
                t = "".join([f"d{n}." for n in gamma]) + "Y" * a + "X" * b
                tags.append(t.rstrip(".") or "1")
            bits.append(f"{self.terms[key]!r}*(" + " ox ".join(tags) + ")")
        return " + ".join(bits)


def _gen_coproduct(gen) -> TensorElement:
    if gen[0] == "Y":
        y = H1Element.y()
        return TensorElement.of(y, H1Element.unit()) + TensorElement.of(H1Element.unit(), y)
    if gen[0] == "X":
        x = H1Element.x()
        return (TensorElement.of(x, H1Element.unit())
                + TensorElement.of(H1Element.unit(), x)
                + TensorElement.of(H1Element.delta(1), H1Element.y()))
    if gen[0] == "d":
        return _delta_coproduct(gen[1])
    raise ValueError(f"unknown generator {gen!r}")


def _delta_coproduct(n: int) -> TensorElement:
    key = ("cop_d", n)
    hit = _COPROD_CACHE.get(key)
    if hit is not None:
        return hit
    d1 = H1Element.delta(1)
    if n == 1:
        out = (TensorElement.of(d1, H1Element.unit())
               + TensorElement.of(H1Element.unit(), d1))
    else:
        out = _gen_coproduct(("X",)).commutator(_delta_coproduct(n - 1))
    _COPROD_CACHE[key] = out
    return out


def _mono_coproduct(m: Mono) -> TensorElement:
    hit = _COPROD_CACHE.get(m)
    if hit is not None:
        return hit
    out = TensorElement.unit(2)
    for gen in _word(m):
        out = out * _gen_coproduct(gen)
    _COPROD_CACHE[m] = out
    return out


def _gen_antipode(gen) -> H1Element:
    if gen[0] == "Y":
        return -H1Element.y()
    if gen[0] == "X":
        return -H1Element.x() + H1Element.delta(1) * H1Element.y()
    if gen[0] == "d":
        return _delta_antipode(gen[1])
    raise ValueError(f"unknown generator {gen!r}")


def _delta_antipode(n: int) -> H1Element:
    key = ("S_d", n)
    hit = _ANTIPODE_CACHE.get(key)
    if hit is not None:
        return hit
    if n == 1:
        out = -H1Element.delta(1)
    else:
        out = _delta_antipode(n - 1).commutator(_gen_antipode(("X",)))
    _ANTIPODE_CACHE[key] = out
    return out


def _mono_antipode(m: Mono) -> H1Element:
    hit = _ANTIPODE_CACHE.get(m)
    if hit is not None:
        return hit
    out = H1Element.unit()
    for gen in reversed(_word(m)):
        out = out * _gen_antipode(gen)
    _ANTIPODE_CACHE[m] = out
    return out


def hochschild_b(T: TensorElement) -> TensorElement:
    """Hopf-cochain coboundary: arity n -> n+1."""
    n = T.arity
    out = T.unit_tensor_left()
    sign = -1
    for i in range(n):
        piece = T.delta_at(i)
        out = out + (piece.scale(sign))
        sign = -sign
    out = out + T.unit_tensor_right().scale((-1) ** (n + 1))
    return out
