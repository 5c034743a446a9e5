from fractions import Fraction

from hypothesis import given, strategies as st

from rcq.scalar import Scalar, ZERO, ONE, I, half


fracs = st.fractions(min_value=-30, max_value=30, max_denominator=12)
scalars = st.builds(Scalar, fracs, fracs)


def test_of_coercions():
    assert Scalar.of(3) == Scalar(Fraction(3))
    assert Scalar.of(Fraction(1, 2)) == half(1)
    assert Scalar.of(Scalar(Fraction(5))) == Scalar(Fraction(5))


def test_constants():
    assert ZERO + ONE == ONE
    assert I * I == -ONE
    assert half(1) == Scalar(Fraction(1, 2))
    assert half(3) == Scalar(Fraction(3, 2))


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(scalars)
def test_additive_inverse(a):
    assert a + (-a) == ZERO
    assert a - a == ZERO


@given(scalars)
def test_multiplicative_inverse(a):
    """Gaussian rationals form a field."""
    if a == ZERO:
        return
    assert a * (ONE / a) == ONE
    assert (1 / a) * a == ONE


def test_complex_parts():
    z = Scalar(Fraction(2), Fraction(-3))
    w = Scalar(Fraction(1), Fraction(1))
    assert (z * w).re == Fraction(5)
    assert (z * w).im == Fraction(-1)


def test_json_round_trip():
    z = Scalar(Fraction(-7, 3), Fraction(1, 4))
    assert Scalar.from_json(z.to_json()) == z
    assert z.to_json() == [-7, 3, 1, 4]
