"""Hochschild machinery for the first Rankin-Cohen bracket.

RC1 = -X(x)2Y + 2Y(x)X + d1Y(x)2Y is a 2-cochain on any module algebra of
the Hopf algebra; its Gerstenhaber square [RC1, RC1](a,b,c) =
RC1(RC1(a,b),c) - RC1(a, RC1(b,c)) must be a coboundary b(B) for RC1 to be
a noncommutative Poisson structure. This module builds the candidate B,
checks b(B) = [RC1, RC1] both as an identity of tensors and by evaluation
on crossed-product algebras, and can re-derive B from scratch by exact
linear algebra over a PBW tensor basis.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .scalar import Scalar, ZERO, ONE, half
from .laurent import Laurent2
from .hopf import H1Element, TensorElement, hochschild_b
from .crossed import CrossedElement, act_mono
from .germ import DiffeoGerm
from .fedosov import rc_element
from . import linalg


def delta2_prime() -> H1Element:
    """delta_2 - (1/2) delta_1^2, the primitive Schwarzian combination."""
    d1 = H1Element.delta(1)
    return H1Element.delta(2) - d1 * d1 * half(1)


class Cochain:
    """Element of the n-fold tensor power acting as an n-linear map."""

    __slots__ = ("tensor",)

    def __init__(self, tensor: TensorElement):
        self.tensor = tensor

    @property
    def arity(self) -> int:
        return self.tensor.arity

    def evaluate(self, args) -> CrossedElement:
        if len(args) != self.tensor.arity:
            raise ValueError("argument count != cochain degree")
        out = None
        for monos, c in self.tensor.terms.items():
            piece = None
            for m, a in zip(monos, args):
                v = act_mono(m, a)
                piece = v if piece is None else piece * v
            piece = piece * c
            out = piece if out is None else out + piece
        if out is None:
            return CrossedElement.zero(args[0].vars)
        return out

    def coboundary(self) -> "Cochain":
        return Cochain(hochschild_b(self.tensor))

    def __add__(self, other):
        return Cochain(self.tensor + other.tensor)

    def __sub__(self, other):
        return Cochain(self.tensor - other.tensor)

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.tensor == other.tensor

    def __repr__(self):
        return f"Cochain({self.tensor!r})"


def hochschild_b_eval(C: Cochain, a, b, c) -> CrossedElement:
    """Definitional coboundary of a 2-cochain on a triple:
    a C(b,c) - C(ab, c) + C(a, bc) - C(a,b) c."""
    return (a * C.evaluate((b, c)) - C.evaluate((a * b, c))
            + C.evaluate((a, b * c)) - C.evaluate((a, b)) * c)


def hochschild_b1_eval(h: H1Element, a, b) -> CrossedElement:
    """Definitional coboundary of a 1-cochain: a h(b) - h(ab) + h(a) b."""
    from .crossed import h1_act
    return a * h1_act(h, b) - h1_act(h, a * b) + h1_act(h, a) * b


def rc1_cochain() -> Cochain:
    return Cochain(rc_element(1, sx_mode="antipode"))


def b_prime_tensor() -> TensorElement:
    """S(X)^2 (x) Y(2Y+1) + S(X)(2Y+1) (x) X(2Y+1) + Y(2Y+1) (x) X^2."""
    X = H1Element.x()
    Y = H1Element.y()
    SX = X.antipode()
    u = H1Element.unit()
    two_y_one = Y * 2 + u
    return (TensorElement.of(SX * SX, Y * two_y_one)
            + TensorElement.of(SX * two_y_one, X * two_y_one)
            + TensorElement.of(Y * two_y_one, X * X))


def b_second_tensor() -> TensorElement:
    """2 d2'Y^2 (x) Y + 2 d2'Y (x) Y^2 + (2/3) d2' (x) Y^3
    + 2 d2'Y (x) Y + d2' (x) Y^2."""
    dp = delta2_prime()
    Y = H1Element.y()
    return (TensorElement.of(dp * Y * Y, Y).scale(2)
            + TensorElement.of(dp * Y, Y * Y).scale(2)
            + TensorElement.of(dp, Y * Y * Y).scale(Scalar(Fraction(2, 3)))
            + TensorElement.of(dp * Y, Y).scale(2)
            + TensorElement.of(dp, Y * Y))


def bounding_cochain() -> Cochain:
    return Cochain(b_prime_tensor() + b_second_tensor())


def defect_tensor(T: TensorElement = None) -> TensorElement:
    """[T, T] as an arity-3 tensor: nesting T into its own slots.

    T(T(a,b),c) corresponds to (coproduct at slot 0) * (T (x) 1) and
    T(a,T(b,c)) to (coproduct at slot 1) * (1 (x) T).
    """
    if T is None:
        T = rc_element(1, sx_mode="antipode")
    return (T.delta_at(0) * T.unit_tensor_right()
            - T.delta_at(1) * T.unit_tensor_left())


def associator_defect(a, b, c, cochain: Cochain = None) -> CrossedElement:
    """RC1(RC1(a,b),c) - RC1(a, RC1(b,c)) by nested evaluation."""
    C = cochain if cochain is not None else rc1_cochain()
    return (C.evaluate((C.evaluate((a, b)), c))
            - C.evaluate((a, C.evaluate((b, c)))))


def poisson_identity_holds() -> bool:
    """The tensor-level fact: b(B) = [RC1, RC1] in the triple tensor power."""
    return hochschild_b(bounding_cochain().tensor) == defect_tensor()


# -- exact solver for the bounding cochain ------------------------------------


def _delta_multisets(cap: int):
    """Sorted tuples of delta indices with total index sum <= cap."""
    out = [()]
    def go(prefix, start, left):
        for n in range(start, left + 1):
            t = prefix + (n,)
            out.append(t)
            go(t, n, left - n)
    go((), 1, cap)
    return out


def pbw_monomials(degree_cap: int):
    """All PBW monomials (gamma, y_exp, x_exp) with
    sum(gamma) + y_exp + x_exp <= degree_cap."""
    monos = []
    for gamma in _delta_multisets(degree_cap):
        w = sum(gamma)
        for a in range(0, degree_cap - w + 1):
            for b in range(0, degree_cap - w - a + 1):
                monos.append((tuple(sorted(gamma)), a, b))
    return monos


def cochain_basis(weight: int = 2, degree_cap: int = 4):
    """Tensor-square PBW monomials of the given total weight."""
    monos = pbw_monomials(degree_cap)
    def wt(m):
        gamma, a, b = m
        return sum(gamma) + b
    basis = []
    for m1 in monos:
        for m2 in monos:
            if wt(m1) + wt(m2) == weight:
                basis.append(TensorElement({(m1, m2): ONE}, 2))
    return basis


def solve_bounding_cochain(weight: int = 2, degree_cap: int = 4):
    """Find some 2-cochain B with b(B) = [RC1, RC1] by exact linear algebra
    over the PBW tensor basis. Returns a Cochain or None if the span is
    too small.
    """
    basis = cochain_basis(weight, degree_cap)
    target = defect_tensor()
    cols = [hochschild_b(T) for T in basis]
    keys = set(target.terms)
    for col in cols:
        keys |= set(col.terms)
    keys = sorted(keys)
    mat = [[col.terms.get(k, ZERO) for col in cols] for k in keys]
    rhs = [target.terms.get(k, ZERO) for k in keys]
    sol = linalg.solve(mat, rhs)
    if sol is None:
        return None
    total = TensorElement.zero(2)
    for T, c in zip(basis, sol):
        if not c.is_zero():
            total = total + T.scale(c)
    return Cochain(total)


# -- sampled verification -------------------------------------------------------


def default_pseudogroup(trunc: int = 10):
    """Finite pool of germs: linear maps, x + x^2, and words in them."""
    quad = DiffeoGerm.from_coeffs({1: 1, 2: 1}, trunc)
    lin2 = DiffeoGerm.linear(2)
    linm = DiffeoGerm.linear(-1)
    pool = [DiffeoGerm.identity(), lin2, linm, quad, quad.inverse(),
            lin2.compose(quad), quad.compose(linm)]
    return pool


def sample_crossed(rng: random.Random, pool, vars=("x1", "x2"),
                   max_terms: int = 2) -> CrossedElement:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        germ = rng.choice(pool)
        e1 = rng.randint(-3, 3)
        e2 = rng.randint(-3, 3)
        c = rng.choice([1, -1, 2, Fraction(1, 2), 3])
        f = Laurent2.monomial(e1, e2, c, vars)
        cur = terms.get(germ)
        terms[germ] = f if cur is None else cur + f
    return CrossedElement(terms, vars)


def verify_prop61(samples: int = 34, seed: int = 7, trunc: int = 10,
                  mus=("0", "x2", "x2*x1"), cochain: Cochain = None,
                  pool=None):
    """Sampled check that b(B) equals the RC1 associator defect.

    The identity involves only the Hopf action and the crossed product, so
    the mu sweep re-runs the sample draw per tag; tags are echoed in the
    case ids. Returns a list of case dicts.
    """
    B = cochain if cochain is not None else bounding_cochain()
    R = rc1_cochain()
    cases = []
    for tag_i, tag in enumerate(mus):
        rng = random.Random(seed + tag_i)
        germs = pool if pool is not None else default_pseudogroup(trunc)
        for i in range(samples):
            a = sample_crossed(rng, germs)
            b = sample_crossed(rng, germs)
            c = sample_crossed(rng, germs)
            lhs = hochschild_b_eval(B, a, b, c)
            rhs = associator_defect(a, b, c, R)
            ok = lhs.eq_trunc(rhs)
            case = {"id": f"prop61-mu[{tag}]-{i}", "ok": bool(ok)}
            if not ok:
                case["witness"] = {"a": repr(a), "b": repr(b), "c": repr(c),
                                   "lhs": repr(lhs), "rhs": repr(rhs)}
            cases.append(case)
    return cases
