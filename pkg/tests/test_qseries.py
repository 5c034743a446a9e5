from fractions import Fraction

import pytest

from rcq.qseries import QSeries, eisenstein, delta_qexp, sigma


def test_sigma():
    assert sigma(1, 6) == 1 + 2 + 3 + 6
    assert sigma(3, 4) == 1 + 8 + 64


def test_eisenstein_leading_coefficients():
    e4 = eisenstein(4, 6)
    assert e4.coeff(0) == 1
    assert e4.coeff(1) == 240
    assert e4.coeff(2) == 2160
    e6 = eisenstein(6, 4)
    assert e6.coeff(1) == -504
    e2 = eisenstein(2, 4)
    assert e2.coeff(1) == -24


def test_delta_first_terms():
    d = delta_qexp(8)
    want = [0, 1, -24, 252, -1472, 4830, -6048, -16744]
    for n, c in enumerate(want):
        assert d.coeff(n) == c


def test_coeff_out_of_range():
    q = QSeries({0: Fraction(1)}, prec=3)
    q.coeff(2)
    with pytest.raises(ValueError):
        q.coeff(3)


def test_mul_tracks_precision():
    a = QSeries({0: Fraction(1), 1: Fraction(2)}, prec=5)
    b = QSeries({0: Fraction(1), 1: Fraction(-2)}, prec=3)
    c = a * b
    assert c.prec == 3
    assert c.coeff(1) == 0
    assert c.coeff(2) == -4


def test_add_sub():
    a = eisenstein(4, 5)
    assert (a - a).is_zero()
    assert (a + a).coeff(1) == 480


def test_jacobi_cube_identity():
    """E4^3 - E6^2 = 1728 Delta, the discriminant normalization."""
    prec = 10
    lhs = eisenstein(4, prec).pow_int(3) - eisenstein(6, prec).pow_int(2)
    rhs = delta_qexp(prec) * Fraction(1728)
    assert (lhs - rhs).is_zero()
