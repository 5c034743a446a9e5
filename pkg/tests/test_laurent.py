from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rcq.laurent import Laurent2
from rcq.scalar import Scalar, I


def mono(e1, e2, c=1):
    return Laurent2.monomial(e1, e2, c)


exps = st.integers(min_value=-3, max_value=3)
coeffs = st.fractions(min_value=-15, max_value=15, max_denominator=6)


@st.composite
def laurents(draw):
    n = draw(st.integers(min_value=0, max_value=3))
    terms = {}
    for _ in range(n):
        terms[(draw(exps), draw(exps))] = Scalar.of(draw(coeffs))
    return Laurent2(terms)


def test_basic_arithmetic():
    x1 = Laurent2.var1()
    x2 = Laurent2.var2()
    f = x1 * x1 + x2 * 3
    assert f.coeff(2, 0) == Scalar.of(1)
    assert f.coeff(0, 1) == Scalar.of(3)
    assert (f - f).is_zero()


def test_mixed_scalar_types():
    f = mono(1, 1)
    assert f * 2 == f * Fraction(2) == f * Scalar.of(2)
    assert (f * I) * I == -f


def test_negative_exponents():
    f = mono(-2, 1)
    g = mono(2, -1)
    assert f * g == Laurent2.const(1)


@given(laurents(), laurents(), laurents())
@settings(max_examples=60, deadline=None)
def test_ring_laws(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)


def test_partials():
    f = mono(3, 2)
    assert f.partial1() == mono(2, 2, 3)
    assert f.partial2() == mono(3, 1, 2)
    # Leibniz
    g = mono(-1, 1)
    lhs = (f * g).partial1()
    assert lhs == f.partial1() * g + f * g.partial1()


def test_x_y_ops():
    """x acts as (1/x2) d/dx1 and y as -x2 d/dx2."""
    f = mono(2, 1)
    assert f.x_op() == mono(1, 0, 2)
    assert f.y_op() == mono(2, 1, -1)
    const = Laurent2.const(5)
    assert const.x_op().is_zero()
    assert const.y_op().is_zero()


def test_shift():
    assert mono(1, 1).shift(0, -3) == mono(1, -2)


def test_eq_trunc_respects_precision():
    exact = mono(1, 0)
    trunc = Laurent2({(1, 0): Scalar.of(1)}, prec1=5)
    assert exact.eq_trunc(trunc)
    other = Laurent2({(1, 0): Scalar.of(1), (2, 0): Scalar.of(1)}, prec1=5)
    assert not exact.eq_trunc(other)


def test_var_mismatch_rejected():
    f = Laurent2.var1(("x1", "x2"))
    g = Laurent2.var1(("p", "q"))
    with pytest.raises(ValueError):
        f + g


@given(laurents())
@settings(max_examples=40, deadline=None)
def test_json_round_trip(f):
    assert Laurent2.from_json(f.to_json()) == f
