import random
from fractions import Fraction

from rcq.laurent import Laurent2
from rcq.scalar import Scalar, I, ONE
from rcq.weyl import (WeylSection, HbarSeries, moyal_star, moyal_coefficient,
                      gz_apply, gz_equals_moyal, falling)


def mono(e1, e2, c=1):
    return Laurent2.monomial(e1, e2, c)


def rand_mono(rng):
    return mono(rng.randint(-3, 3), rng.randint(-3, 3),
                Fraction(rng.randint(-4, 4), rng.randint(1, 3)))


def test_falling_factorial():
    assert falling(5, 2) == 20
    assert falling(3, 0) == 1
    assert falling(2, 3) == 0


def test_moyal_order_zero_is_pointwise():
    f, g = mono(2, 1), mono(-1, 3)
    assert moyal_coefficient(f, g, 0) == f * g


def test_canonical_commutator():
    """u1 * u2 - u2 * u1 = -i hbar under the pinned orientation."""
    u1, u2 = mono(1, 0), mono(0, 1)
    d = moyal_star(u1, u2, 2) - moyal_star(u2, u1, 2)
    assert d.coeff(0).is_zero()
    assert d.coeff(1) == Laurent2.const(1) * (-I)
    assert d.coeff(2).is_zero()


def test_moyal_associative_sample():
    rng = random.Random(11)
    for _ in range(5):
        f, g, h = (rand_mono(rng) for _ in range(3))
        order = 3
        for n in range(order + 1):
            lhs = Laurent2.zero()
            rhs = Laurent2.zero()
            for i in range(n + 1):
                lhs = lhs + moyal_coefficient(moyal_coefficient(f, g, i), h, n - i)
                rhs = rhs + moyal_coefficient(f, moyal_coefficient(g, h, i), n - i)
            assert lhs == rhs


def test_moyal_antisymmetric_part_is_poisson():
    f, g = mono(2, 0), mono(0, 2)
    pois = f.partial1() * g.partial2() - f.partial2() * g.partial1()
    anti = moyal_coefficient(f, g, 1) - moyal_coefficient(g, f, 1)
    assert anti == pois * (-I)


def test_gz_matches_moyal_on_corpus():
    rng = random.Random(5)
    for _ in range(6):
        f, g = rand_mono(rng), rand_mono(rng)
        assert gz_equals_moyal(f, g, 4)


def test_gz_raw_value_differs_by_normalization():
    """gz_apply is the bare pairing; the identification to the moyal
    coefficient inserts (i/2)^n / n!."""
    f, g = mono(1, 0), mono(0, 1)
    raw = gz_apply(1, f, g)
    scaled = raw * (I * Scalar.of(Fraction(1, 2)))
    assert scaled == moyal_coefficient(f, g, 1)


def test_weyl_section_product_projects_to_star():
    rng = random.Random(7)
    for _ in range(4):
        f, g = rand_mono(rng), rand_mono(rng)
        a = WeylSection.of_base(f, bound=4)
        b = WeylSection.of_base(g, bound=4)
        got = a.weyl_mul(b).sigma()
        assert got.coeff(0) == f * g


def test_hbar_series_order_guard():
    h = HbarSeries({0: mono(1, 0)}, order=2)
    h.coeff(2)
    try:
        h.coeff(3)
    except ValueError:
        pass
    else:
        raise AssertionError("coefficient beyond the stated order")


def test_hbar_series_arithmetic():
    a = HbarSeries({0: mono(1, 0), 1: mono(0, 1)}, order=3)
    b = HbarSeries({1: mono(0, 1, -1)}, order=3)
    s = a + b
    assert s.coeff(1).is_zero()
    assert s.coeff(0) == mono(1, 0)
