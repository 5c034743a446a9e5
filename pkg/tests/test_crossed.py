import random

from rcq.crossed import (CrossedElement, act_mono, h1_act, cocycle_function,
                         delta_cocycle_defect)
from rcq.germ import DiffeoGerm
from rcq.hopf import H1Element
from rcq.laurent import Laurent2
from rcq.poisson import default_pseudogroup, sample_crossed


T = 10


def test_crossed_units_compose_germs():
    phi = DiffeoGerm.linear(2)
    psi = DiffeoGerm.linear(-1)
    a = CrossedElement.of(1, germ=phi)
    b = CrossedElement.of(1, germ=psi)
    prod = a * b
    assert set(g.key() for g in prod.terms) == {phi.compose(psi).key()}


def test_crossed_coefficient_twist():
    """(f U_phi)(g U_psi) = f (g o lift(phi^-1)) U_{phi psi}: the left factor
    drags the right coefficient through its germ."""
    phi = DiffeoGerm.linear(2)
    f = Laurent2.monomial(1, 0)
    g = Laurent2.monomial(1, 0)
    prod = CrossedElement.of(f, germ=phi) * CrossedElement.of(g)
    coeff = list(prod.terms.values())[0]
    assert coeff == f * phi.inverse().pullback(g) or coeff == f * phi.pullback(g)


def test_cocycle_function_affine_vanishes():
    for g in [DiffeoGerm.identity(), DiffeoGerm.linear(2), DiffeoGerm.affine(1, 3)]:
        assert cocycle_function(g, 1).is_zero()


def test_cocycle_function_moebius_nonzero():
    m = DiffeoGerm.moebius(1, 0, 1, 1)
    assert not cocycle_function(m, 1).is_zero()


def test_delta_cocycle_law_based_pairs():
    quad = DiffeoGerm.from_coeffs({1: 1, 2: 1}, trunc=T)
    pool = [DiffeoGerm.linear(2), DiffeoGerm.moebius(1, 0, 1, 1),
            quad, quad.inverse()]
    for phi in pool:
        for psi in pool:
            d = delta_cocycle_defect(phi, psi)
            assert d.eq_trunc(Laurent2.zero()), (phi.key(), psi.key())


def test_act_mono_x_is_derivation_on_functions():
    f = Laurent2.monomial(2, 1)
    elem = CrossedElement.of(f)
    out = act_mono(((), 0, 1), elem)
    got = out.terms[DiffeoGerm.identity()]
    assert got == f.x_op()


def test_h1_act_unit_monomial_is_identity():
    elem = CrossedElement.of(Laurent2.monomial(1, -2))
    h = H1Element.monomial((), 0, 0)
    assert h1_act(h, elem).eq_trunc(elem)


def test_module_algebra_sample():
    """h(a b) = sum h1(a) h2(b) over the coproduct."""
    rng = random.Random(9)
    pool = default_pseudogroup(T)
    for h in [H1Element.x(), H1Element.y(), H1Element.delta(1),
              H1Element.x() * H1Element.y()]:
        for _ in range(3):
            a = sample_crossed(rng, pool)
            b = sample_crossed(rng, pool)
            lhs = h1_act(h, a * b)
            rhs = h.coproduct().act2(act_mono, a, b)
            assert lhs.eq_trunc(rhs)


def test_delta1_acts_by_multiplier():
    """delta1 on U_phi multiplies by the germ's log-derivative cocycle."""
    m = DiffeoGerm.moebius(1, 0, 1, 1)
    elem = CrossedElement.of(1, germ=m)
    out = h1_act(H1Element.delta(1), elem)
    assert set(out.terms) == {m}
    assert not out.terms[m].is_zero()
