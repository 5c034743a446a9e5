import random
from fractions import Fraction

from rcq.scalar import Scalar, ZERO, ONE, I
from rcq.laurent import Laurent2
from rcq.weyl import WeylSection, HbarSeries, moyal_coefficient
from rcq.hopf import H1Element, TensorElement
from rcq.germ import DiffeoGerm
from rcq.crossed import CrossedElement
from rcq.geometry import MomentSystem, omega_from_mu
from rcq import fedosov as fd

V = ("x1", "x2")
L = Laurent2.monomial


def lau(*mons):
    out = Laurent2.zero(V)
    for (e1, e2, c) in mons:
        out = out + L(e1, e2, c, V)
    return out


x1 = L(1, 0, 1, V)
x2 = L(0, 1, 1, V)
one = Laurent2.const(1, V)
mu_zero = Laurent2.zero(V)
mu_x2 = x2
mu_x2x1 = L(1, 1, 1, V)

# --- referee: a_{1,0} must be +d1 f, a_{2,0} = (d1^2 f - mu d2 f)/2 ----------
f = lau((2, 1, 1), (0, -1, 3), (1, 2, Fraction(1, 2)))
for mu in (mu_zero, mu_x2, mu_x2x1):
    fl = fd.flat_section(f, mu, 6)
    assert (fl.coeff(1, 0) - f.partial1()).is_zero(), "a_{1,0} sign"
    want20 = (f.partial1().partial1() - mu * f.partial2()) * Fraction(1, 2)
    assert (fl.coeff(2, 0) - want20).is_zero(), "a_{2,0}"
    assert (fl.coeff(0, 1) - f.partial2()).is_zero(), "a_{0,1}"
print("referee ok")

# m=3 hand value: 6 a30 = d1^3 f - d1(mu d2 f) - 2 mu d2 d1 f + (mu/x2) d1 f... wait
# a_{3,0} = (1/3)(d1 a20 - mu(d2 - 1/(2x2)) a10)
for mu in (mu_x2, mu_x2x1):
    fl = fd.flat_section(f, mu, 6)
    a20 = (f.partial1().partial1() - mu * f.partial2()) * Fraction(1, 2)
    a10 = f.partial1()
    want30 = (a20.partial1() - mu * (a10.partial2() - a10.shift(0, -1) * Fraction(1, 2))) * Fraction(1, 3)
    assert (fl.coeff(3, 0) - want30).is_zero()
print("a30 ok")

# --- exact sigma-inverse of x2 at mu=0: x2 + u^2 + (u^2)^2/(4 x2), rest 0 ----
fl = fd.flat_section(x2, mu_zero, 8)
assert (fl.coeff(0, 0) - x2).is_zero()
assert (fl.coeff(0, 1) - one).is_zero()
assert (fl.coeff(0, 2) - L(0, -1, Fraction(1, 4), V)).is_zero()
for (m, n), val in fl.table.items():
    if (m, n) not in ((0, 0), (0, 1), (0, 2)):
        assert val.is_zero(), (m, n, val)
print("sigma-inverse x2 exact ok")

# sigma-inverse of x1 at mu=0: a_{1,n} tail
fl = fd.flat_section(x1, mu_zero, 8)
assert (fl.coeff(1, 0) - one).is_zero()
assert (fl.coeff(1, 1) - L(0, -1, Fraction(-1, 2), V)).is_zero()
assert (fl.coeff(1, 2) - L(0, -2, Fraction(1, 4), V)).is_zero()
assert (fl.coeff(1, 3) - L(0, -3, Fraction(-1, 8), V)).is_zero()
assert fl.coeff(0, 1).is_zero() and fl.coeff(2, 0).is_zero()
print("sigma-inverse x1 ok")

# f = x1 mu = 0: NOT x1 + u1 exactly? claimed in contract: section is x1 + u^1 exactly
# but our a_{1,1} above is nonzero. Check the contract example again: it says
# "f = x1, mu = 0: section is x1 + u1 exactly (all higher terms vanish)".
# With the ladder a_{1,1} = (d2 - 1/(2x2)) a_{1,0} = -1/(2x2) != 0.
# So the example disagrees with the recursion; record whichever holds.
print("NOTE: f=x1 mu=0 has a_{1,1} =", fl.coeff(1, 1))

# --- tables == fixpoint == displayed system == x2 closed form ----------------
for mu in (mu_zero, mu_x2, mu_x2x1):
    fl = fd.flat_section(f, mu, 6)
    fx = fd.flat_section_fixpoint(f, mu, 6)
    sec = fl.section()
    assert fx.terms == sec.terms, ("fixpoint vs tables", mu)
    for r in fd.flat_recursion_defects(fl):
        assert r.is_zero()
    for m in range(0, 4):
        for n in range(0, 3):
            assert (fd.closed_form_x2(fl, m, n) - fl.coeff(m, n)).is_zero()
print("tables = fixpoint, system holds, x2 closed form ok")

# --- D(flat) = 0 and D^2 = 0 --------------------------------------------------
for mu in (mu_zero, mu_x2, mu_x2x1, x2 * x1 * x1):
    fl = fd.flat_section(f, mu, 6)
    d = fd.fedosov_D(fl.section(), mu)
    assert all(v.is_zero() for v in d.terms.values()), ("D flat != 0", mu)
    # D^2 on a random non-flat section
    rnd = WeylSection({(0, 1, 0, ()): f, (1, 0, 2, ()): x2,
                       (0, 2, 1, ()): L(1, -1, 2, V)}, 8, V)
    dd = fd.fedosov_D(fd.fedosov_D(rnd, mu), mu)
    assert all(v.is_zero() for v in dd.terms.values()), ("D^2 != 0", mu)
print("D flat = 0, D^2 = 0 ok")

# D on constants
c = WeylSection.of_base(one, 6)
assert fd.fedosov_D(c, mu_x2).is_zero()

# bracket via commutator cross-check
g = fd.gamma_form(mu_x2x1)
for a in (WeylSection({(0, 1, 1, ()): f}, 6, V),
          WeylSection({(0, 0, 2, (1,)): x2}, 6, V),
          WeylSection({(1, 1, 0, (2,)): x1}, 6, V)):
    b1 = fd.gamma_bracket(g, a)
    b2 = fd.gamma_bracket_via_commutator(g, a)
    diff = b1 - b2
    assert all(v.is_zero() for v in diff.terms.values()), "bracket mismatch"
print("bracket = commutator/hbar ok")

# --- star basics --------------------------------------------------------------
gfun = lau((1, 1, 1), (0, 2, -2), (3, 0, Fraction(1, 3)))
for mu in (mu_zero, mu_x2, mu_x2x1):
    st = fd.fedosov_star(f, one, mu, 3)
    assert (st.coeff(0) - f).is_zero() and all(st.coeff(k).is_zero() for k in (1, 2, 3))
    st = fd.fedosov_star(x1, x2, mu, 3)
    ts = fd.fedosov_star(x2, x1, mu, 3)
    d = st - ts
    assert (d.coeff(1) + I * one).is_zero(), ("[x1,x2] != -i hbar", mu, d.coeff(1))
    assert d.coeff(0).is_zero() and d.coeff(2).is_zero() and d.coeff(3).is_zero()
    # oracle
    for (u, v) in ((f, gfun), (x1, gfun), (f, x2)):
        assert fd.fedosov_star(u, v, mu, 3).eq_trunc(fd.star_oracle(u, v, mu, 3)), ("oracle", mu)
print("unit, [x1,x2]=-i hbar, pairing oracle ok")

# hbar^1 = Poisson/moyal c1
for mu in (mu_zero, mu_x2x1):
    st = fd.fedosov_star(f, gfun, mu, 1)
    want = moyal_coefficient(f, gfun, 1)
    assert (st.coeff(1) - want).is_zero(), "c1 != moyal c1"
print("c1 = moyal c1 ok")

# associativity
triples = [(x1, x2, L(0, -1, 1, V)), (f, gfun, x2), (x1 * x1, gfun, L(2, -1, 1, V))]
for mu in (mu_zero, mu_x2, mu_x2x1):
    for (u, v, w) in triples:
        de = fd.star_assoc_defect(u, v, w, mu, 3)
        assert all(c.is_zero() for c in de.coeffs.values()), ("assoc", mu)
print("associativity mod hbar^4 ok")

# --- mu=0 star transported to the orbit chart == Moyal -----------------------
ms = MomentSystem()
for (u, v) in ((x1, x2), (f, gfun), (x1 * x2, x2)):
    st = fd.fedosov_star(u, v, mu_zero, 3)
    for j in range(4):
        lhs = ms.transport(st.coeff(j))
        rhs = moyal_coefficient(ms.transport(u), ms.transport(v), j)
        assert (lhs - rhs).is_zero(), ("transport", j)
print("mu=0 star = transported Moyal ok")

# --- rc closed form coefficient matches tables --------------------------------
for mu in (mu_zero, mu_x2, mu_x2x1):
    fl = fd.flat_section(f, mu, 5)
    for m in range(0, 5):
        for n in range(0, 5 - m):
            got = fd.rc_closed_form_coeff(m, n, f, mu, omega_sign=1)
            assert (got - fl.coeff(m, n)).is_zero(), ("rc closed form", mu, m, n)
# and the wrong sign must fail somewhere at m >= 2 with mu != 0
bad = False
fl = fd.flat_section(f, mu_x2, 5)
for m in range(2, 5):
    for n in range(0, 5 - m):
        got = fd.rc_closed_form_coeff(m, n, f, mu_x2, omega_sign=-1)
        if not (got - fl.coeff(m, n)).is_zero():
            bad = True
assert bad, "omega_sign should matter"
print("rc closed form (omega_sign=+1) ok; -1 rejected")

# --- rc_apply reproduces star coefficients ------------------------------------
for mu in (mu_zero, mu_x2, mu_x2x1):
    for n in range(0, 4):
        got = fd.rc_star_coefficient(n, f, gfun, mu)
        want = fd.fedosov_star(f, gfun, mu, n).coeff(n)
        assert (got - want).is_zero(), ("rc pairing", mu, n)
# sign scan: only (omega_sign=+1, poch_sign=+1) should work for all n <= 3, mu=x2*x1
ok_flags = []
for os in (1, -1):
    for ps in (1, -1):
        good = True
        for n in range(0, 4):
            got = fd.rc_star_coefficient(n, f, gfun, mu_x2x1, omega_sign=os, poch_sign=ps)
            want = fd.fedosov_star(f, gfun, mu_x2x1, n).coeff(n)
            if not (got - want).is_zero():
                good = False
                break
        if good:
            ok_flags.append((os, ps))
assert ok_flags == [(1, 1)], ok_flags
print("rc_apply = star coefficients, flags (+1,+1) selected:", ok_flags)

# --- rc_element n=1 -----------------------------------------------------------
rc1 = fd.rc_element(1, sx_mode="antipode")
X = H1Element.x()
Y = H1Element.y()
d1Y = H1Element.delta(1) * Y
want = (TensorElement.of(-X, Y * 2) + TensorElement.of(Y * 2, X)
        + TensorElement.of(d1Y, Y * 2))
assert rc1 == want, rc1
rc0 = fd.rc_element(0)
assert rc0 == TensorElement.of(H1Element.unit(), H1Element.unit())
print("rc_element n=0,1 ok")

# --- extended A2 example under the printed recursion (omega_sign=-1) ---------
from rcq.extended import ExtendedElement, ExtTensor2
T2 = fd.rc_element_extended(2, sx_mode="antipode", omega_sign=-1)
# A_2 coefficient = leg applied with poch count 0 at k=2: term (A2/2!) x (B0 (2Y+0)_2 /0!)
# instead just rebuild A2 directly:
Xh = H1Element.x()
SX = ExtendedElement.of_h1(Xh.antipode())
A2_printed = SX * SX - ExtendedElement.beta(0) * ExtendedElement.of_h1(Y)
# recompute via the module with omega_sign=-1: A list not exposed; emulate:
A1 = SX
A2 = SX * A1 + (ExtendedElement.beta(0) * (ExtendedElement.of_h1(Y) * A1 * 0 + ExtendedElement.of_h1(Y) * ExtendedElement.unit())) * (-1)
# simpler: A2 = SX*SX - beta0 * (Y - 0) * A0
A2b = SX * SX - ExtendedElement.beta(0) * (ExtendedElement.of_h1(Y) * ExtendedElement.unit())
assert A2b == A2_printed
print("extended A2 (printed sign) expression ok")

# --- crossed star vs chi(rc_element_extended) ---------------------------------
tr = DiffeoGerm.affine(1, 1)     # x + 1
refl = DiffeoGerm.linear(-1)     # -x
ident = DiffeoGerm.identity()

a = CrossedElement({tr: lau((1, 1, 1), (0, -1, 2)), ident: f}, V)
b = CrossedElement({refl: gfun, ident: lau((2, 0, 1), (0, 1, -1))}, V)

lhs = fd.crossed_star(a, b, mu_x2, 2)
scan = []
for sx in ("antipode", "minus_x"):
    for os in (1, -1):
        rhs = fd.chi_rc_star(a, b, mu_x2, 2, sx_mode=sx, omega_sign=os)
        if fd.crossed_tables_eq(lhs, rhs, N=2):
            scan.append((sx, os))
print("affine pseudogroup chi-match flags:", scan)
assert ("antipode", 1) in scan and ("minus_x", 1) in scan

# nonlinear germ (quadratic) with mu=0 so the connection is preserved trivially? no:
# mu=0 invariance needs Schwarzian-flat maps (Moebius). Use a moebius germ, mu = 0.
mob = DiffeoGerm.moebius(1, 0, 1, 1)   # x/(x+1)
am = CrossedElement({mob: lau((0, 1, 1), (1, 0, 1))}, V)
bm = CrossedElement({ident: gfun}, V)
lhs = fd.crossed_star(am, bm, mu_zero, 2)
scan2 = []
for sx in ("antipode", "minus_x"):
    rhs = fd.chi_rc_star(am, bm, mu_zero, 2, sx_mode=sx, omega_sign=1)
    if fd.crossed_tables_eq(lhs, rhs, N=2):
        scan2.append(sx)
print("moebius germ, mu=0: sx modes matching:", scan2)

# --- gauge transform order 2 ---------------------------------------------------
res = fd.gauge_transform_order2()
assert res is not None, "no order-2 gauge operator found"
sign, ops = res
print("gauge order-2: sign", sign, "ops", [(j, aa, bb, str(c)) for j, aa, bb, c in ops])

# verify on fresh samples
fresh = [(lau((1, 2, 1)), lau((2, 0, 1), (0, -2, 1))), (lau((0, 3, 1)), lau((3, 1, 2)))]
def t2(h):
    out = Laurent2.zero(V)
    for (j, aa, bb, c) in ops:
        w = h
        for _ in range(aa):
            w = w.partial1()
        for _ in range(bb):
            w = w.partial2()
        out = out + w.shift(0, j) * c
    return out
for (u, v) in fresh:
    c2 = fd.fedosov_star(u, v, mu_zero, 2).coeff(2)
    m2 = moyal_coefficient(u, v, 2)
    want = (u * t2(v) - t2(u * v) + t2(u) * v) * sign
    assert (c2 - m2 - want).is_zero(), "gauge check on fresh sample"
print("gauge operator verified on fresh samples")

# --- Lemma 3.3 moment realization ---------------------------------------------
msys = MomentSystem()
PQ = ("p", "q")
mons = [Laurent2.monomial(2, 1, 1, PQ), Laurent2.monomial(1, 3, 2, PQ),
        Laurent2.monomial(0, 2, 1, PQ)]
def mom_mul(u, v):
    return u * v
nonzero_n1 = False
for name in ("H", "E", "F", "P", "Q"):
    lam = msys.moment(name)
    for u in mons:
        for n in (0, 2, 3, 4, 5):
            lhs = fd.rc_apply(n, lam, u, msys.e_tilde,
                              lambda h: msys.h_tilde(h) * Fraction(1, 2), mom_mul)
            rhs = fd.rc_apply(n, u, lam, msys.e_tilde,
                              lambda h: msys.h_tilde(h) * Fraction(1, 2), mom_mul)
            assert (lhs - rhs).is_zero(), ("lemma 3.3", name, n)
        d1v = fd.rc_apply(1, lam, u, msys.e_tilde,
                          lambda h: msys.h_tilde(h) * Fraction(1, 2), mom_mul)
        d2v = fd.rc_apply(1, u, lam, msys.e_tilde,
                          lambda h: msys.h_tilde(h) * Fraction(1, 2), mom_mul)
        if not (d1v - d2v).is_zero():
            nonzero_n1 = True
assert nonzero_n1, "n=1 should not be symmetric"
print("lemma 3.3 symmetry (n != 1) ok; n=1 asymmetric as expected")

print("fedosov smoke OK")
