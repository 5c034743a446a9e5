from fractions import Fraction

from rcq.crossed import CrossedElement, h1_act
from rcq.geometry import (Connection2D, MomentSystem, connection_preserving_germ,
                          invariance_defect, omega_from_mu, pushforward_mu,
                          pushforward_mu_closed, mu_from_omega)
from rcq.germ import DiffeoGerm, Series1
from rcq.laurent import Laurent2
from rcq.poisson import delta2_prime
from rcq.scalar import Scalar


T = 10


def mu_of(tag):
    table = {
        "0": Laurent2.zero(),
        "x2": Laurent2.monomial(0, 1),
        "x2*x1": Laurent2.monomial(1, 1),
        "x1": Laurent2.monomial(1, 0),
    }
    return table[tag]


def test_family_connections_flat_iff_mu_in_family():
    for tag, flat in [("0", True), ("x2", True), ("x2*x1", True), ("x1", False)]:
        conn = Connection2D.from_mu(mu_of(tag))
        assert conn.matches_family()
        assert conn.is_flat() == flat, tag


def test_curvature_zero_connection():
    conn = Connection2D.from_mu(Laurent2.zero())
    assert conn.is_flat()


def test_omega_mu_round_trip():
    mu = mu_of("x2*x1")
    assert mu_from_omega(omega_from_mu(mu)) == mu
    assert omega_from_mu(mu) == mu.shift(0, -3)


def test_moebius_germs_preserve_flat_connection():
    for m in [DiffeoGerm.moebius(1, 0, 1, 1), DiffeoGerm.moebius(2, 1, 1, 1)]:
        assert invariance_defect(Laurent2.zero(), m).eq_trunc(Laurent2.zero())


def test_quadratic_germ_breaks_invariance():
    quad = DiffeoGerm.from_coeffs({1: 1, 2: 1}, trunc=T)
    assert not invariance_defect(Laurent2.zero(), quad).eq_trunc(Laurent2.zero())


def test_invariance_matches_delta2_vanishing():
    """The two sides of the criterion move together: projective germs pass
    both, the quadratic germ fails both."""
    dp = delta2_prime()
    quad = DiffeoGerm.from_coeffs({1: 1, 2: 1}, trunc=T)
    for germ, expect_flat in [(DiffeoGerm.moebius(1, 1, -1, 1), True),
                              (quad, False)]:
        inv = invariance_defect(Laurent2.zero(), germ).eq_trunc(Laurent2.zero())
        act = h1_act(dp, CrossedElement.of(1, germ=germ))
        dp_zero = act.eq_trunc(CrossedElement.zero())
        assert inv == expect_flat
        assert dp_zero == expect_flat


def test_delta2_inner_form_on_preserving_germ():
    """delta2'(a) = [-Omega, a] on the crossed product once the germ
    preserves the connection."""
    dp = delta2_prime()
    nu = Series1.const(1, T)
    mu = mu_of("x2")
    phi = connection_preserving_germ(nu, 2, 0, trunc=T)
    om = CrossedElement.of(omega_from_mu(mu))
    a = CrossedElement.of(Laurent2.monomial(1, -1, Fraction(1, 2)), germ=phi)
    lhs = h1_act(dp, a)
    rhs = om * a * Scalar.of(-1) + a * om
    assert lhs.eq_trunc(rhs)


def test_pushforward_agrees_with_closed_form():
    mu = mu_of("x2*x1")
    for phi in [DiffeoGerm.linear(2), DiffeoGerm.moebius(1, 0, 1, 1),
                DiffeoGerm.from_coeffs({1: 1, 2: 1}, trunc=T)]:
        a = pushforward_mu(mu, phi)
        b = pushforward_mu_closed(mu, phi)
        assert a.eq_trunc(b)


def test_preserving_germ_second_jet():
    phi = connection_preserving_germ(Series1.x(T), 2, 1, trunc=T)
    assert phi.series[1] == Scalar.of(2)
    assert phi.series[2] == Scalar.of(Fraction(1, 2))


def test_moment_bracket_table():
    ms = MomentSystem()
    for case in ms.bracket_cases():
        assert case["ok"], case["id"]


def test_moment_diagonal_actions():
    ms = MomentSystem()
    for case in ms.diag_cases():
        assert case["ok"], case["id"]


def test_transport_is_multiplicative():
    ms = MomentSystem()
    f = Laurent2.monomial(1, 1)
    g = Laurent2.monomial(0, 2)
    assert ms.transport(f * g) == ms.transport(f) * ms.transport(g)


def test_transport_rejects_truncated_input():
    ms = MomentSystem()
    f = Laurent2({(1, 0): Scalar.of(1)}, prec1=4)
    try:
        ms.transport(f)
    except ValueError:
        pass
    else:
        raise AssertionError("transport should require exact input")
