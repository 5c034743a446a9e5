import random

from hypothesis import given, settings, strategies as st

from rcq.hopf import H1Element, TensorElement, hochschild_b
from rcq.poisson import pbw_monomials
from rcq.scalar import Scalar, ZERO, ONE


X = H1Element.x()
Y = H1Element.y()
D1 = H1Element.delta(1)
UNIT = H1Element.monomial((), 0, 0)
ZERO_EL = H1Element.monomial((), 0, 0, 0)


def monomial(gamma, a, b):
    return H1Element.monomial(gamma, a, b)


def test_pbw_normal_form_yx():
    """[Y, X] = X, so YX rewrites to XY + X."""
    yx = Y * X
    assert yx == X * Y + X


def test_delta_weights():
    # [Y, d_n] = n d_n
    for n in (1, 2, 3):
        dn = H1Element.delta(n)
        assert Y * dn - dn * Y == dn * Scalar.of(n)


def test_x_on_delta_raises_index():
    # [X, d_n] = d_{n+1}
    for n in (1, 2):
        dn = H1Element.delta(n)
        assert X * dn - dn * X == H1Element.delta(n + 1)


def test_deltas_commute():
    d2 = H1Element.delta(2)
    assert D1 * d2 == d2 * D1


def test_counit_picks_constant_term():
    h = UNIT * Scalar.of(5) + X * Y + D1
    assert h.counit() == Scalar.of(5)


def test_coproduct_of_x_has_delta_twist():
    t = X.coproduct()
    expected = (TensorElement.of(X, UNIT) + TensorElement.of(UNIT, X)
                + TensorElement.of(D1, Y))
    assert t == expected


def test_antipode_on_generators():
    assert Y.antipode() == -Y
    assert D1.antipode() == -D1
    assert X.antipode() == -X + D1 * Y


def test_antipode_is_antihomomorphism():
    rng = random.Random(3)
    monos = pbw_monomials(3)
    for _ in range(12):
        a = monomial(*rng.choice(monos))
        b = monomial(*rng.choice(monos))
        assert (a * b).antipode() == b.antipode() * a.antipode()


def pick_monomials(count, seed, cap=4):
    rng = random.Random(seed)
    monos = pbw_monomials(cap)
    return [monomial(*rng.choice(monos)) for _ in range(count)]


def test_coassociativity_sample():
    for h in pick_monomials(10, seed=1):
        t = h.coproduct()
        assert t.delta_at(0) == t.delta_at(1)


def test_counit_axiom_sample():
    for h in pick_monomials(10, seed=2):
        t = h.coproduct()
        left = sum_slots(t, 0)
        right = sum_slots(t, 1)
        assert left == h
        assert right == h


def sum_slots(t, slot):
    """Contract one tensor slot with the counit."""
    out = ZERO_EL
    for key, c in t.terms.items():
        eps = monomial(*key[slot]).counit()
        rest = monomial(*key[1 - slot])
        out = out + rest * (Scalar.of(c) * eps)
    return out


def test_antipode_convolution_sample():
    """m(S (x) id)Delta = unit . counit, both ways."""
    for h in pick_monomials(8, seed=4):
        want = UNIT * h.counit()
        for slot in (0, 1):
            acc = ZERO_EL
            for key, c in h.coproduct().terms.items():
                a = monomial(*key[0])
                b = monomial(*key[1])
                if slot == 0:
                    acc = acc + a.antipode() * b * Scalar.of(c)
                else:
                    acc = acc + a * b.antipode() * Scalar.of(c)
            assert acc == want


def test_tensor_flip_and_scale():
    t = TensorElement.of(X, Y).scale(2)
    assert t.flip() == TensorElement.of(Y, X).scale(2)


def test_hochschild_b_squares_to_zero_small():
    for t in [TensorElement.of(X, Y), TensorElement.of(D1 * Y, Y * Y)]:
        assert hochschild_b(hochschild_b(t)).is_zero()


@given(st.integers(min_value=0, max_value=2),
       st.integers(min_value=0, max_value=2))
@settings(max_examples=20, deadline=None)
def test_counit_multiplicative(a, b):
    f = monomial((), a, b)
    g = monomial((1,), 1, 0)
    assert (f * g).counit() == f.counit() * g.counit()
