"""Verification suites behind the `verify` subcommands.

Each suite function returns a list of case dicts {'id', 'ok', 'ref'} plus
optional 'inputs' (digestable summary) and 'witness' (only on failure,
enough to replay). Case generation is deterministic for a fixed seed and
config, so two runs produce identical reports up to timing.
"""

import random
from fractions import Fraction

from .scalar import Scalar, ZERO, ONE, I, half
from .laurent import Laurent2
from .germ import DiffeoGerm, Series1
from .hopf import H1Element, TensorElement, hochschild_b
from .weyl import moyal_star, moyal_coefficient, gz_equals_moyal, WeylSection
from .crossed import (CrossedElement, act_mono, h1_act, delta_cocycle_defect,
                      cocycle_function)
from .geometry import (Connection2D, MomentSystem, connection_preserving_germ,
                       invariance_defect, omega_from_mu, pushforward_mu,
                       pushforward_mu_closed, schwarzian)
from . import fedosov as fd
from . import modular as md
from . import poisson as ps
from .serialize import (laurent_to_json, germ_to_json, crossed_to_json,
                        mu_tag, parse_mu)

UNIT_MONO = ((), 0, 0)


def mono_tag(m) -> str:
    gamma, a, b = m
    return ("".join(f"d{n}" for n in gamma) + "Y" * a + "X" * b) or "1"


def _h1_of(m) -> H1Element:
    return H1Element.monomial(m[0], m[1], m[2])


def _case(case_id, ok, ref, inputs=None, witness=None):
    c = {"id": case_id, "ok": bool(ok), "ref": ref}
    if inputs is not None:
        c["inputs"] = inputs
    if not ok:
        c["witness"] = witness or {}
    return c


# -- hopf ------------------------------------------------------------------------

def _eps_contract(t: TensorElement, slot: int) -> H1Element:
    out = {}
    for key, c in t.terms.items():
        if key[slot] != UNIT_MONO:
            continue
        rest = key[:slot] + key[slot + 1:]
        if len(rest) != 1:
            raise ValueError("contraction expects arity 2")
        out[rest[0]] = out.get(rest[0], ZERO) + c
    return H1Element(out)


def _antipode_convolution(h: H1Element, antipode_slot: int) -> H1Element:
    """m(S ox id)Delta or m(id ox S)Delta depending on the slot."""
    total = H1Element()
    for (m1, m2), c in h.coproduct().terms.items():
        a = _h1_of(m1)
        b = _h1_of(m2)
        if antipode_slot == 0:
            a = a.antipode()
        else:
            b = b.antipode()
        total = total + (a * b) * c
    return total


def suite_hopf(degree_cap: int = 4, samples: int = 40, seed: int = 7,
               trunc: int = 8):
    cases = []
    x = H1Element.x()
    for m in ps.pbw_monomials(degree_cap):
        tag = mono_tag(m)
        h = _h1_of(m)
        cop = h.coproduct()

        ok = cop.delta_at(0) == cop.delta_at(1)
        cases.append(_case(f"hopf-coassoc-{tag}", ok, "coassociativity"))

        ok = _eps_contract(cop, 0) == h and _eps_contract(cop, 1) == h
        cases.append(_case(f"hopf-counit-{tag}", ok, "counit laws"))

        unit_eps = H1Element.unit() * h.counit()
        ok = (_antipode_convolution(h, 0) == unit_eps
              and _antipode_convolution(h, 1) == unit_eps)
        cases.append(_case(f"hopf-antipode-{tag}", ok, "antipode convolution"))

        hx = h * x
        ok = (hx.coproduct() == cop * x.coproduct()
              and hx.antipode() == x.antipode() * h.antipode())
        cases.append(_case(f"hopf-compat-{tag}", ok,
                           "coproduct multiplicativity and antihomomorphism"))

    rng = random.Random(seed)
    pool = ps.default_pseudogroup(trunc)
    h_pool = [m for m in ps.pbw_monomials(3) if m != UNIT_MONO]
    for i in range(samples):
        m = rng.choice(h_pool)
        h = _h1_of(m)
        a = ps.sample_crossed(rng, pool)
        b = ps.sample_crossed(rng, pool)
        lhs = h1_act(h, a * b)
        rhs = h.coproduct().act2(act_mono, a, b)
        ok = lhs.eq_trunc(rhs)
        cases.append(_case(
            f"hopf-module-algebra-{i}", ok, "module-algebra law",
            inputs={"h": mono_tag(m), "a": crossed_to_json(a),
                    "b": crossed_to_json(b)},
            witness=None if ok else {"h": mono_tag(m), "a": repr(a),
                                     "b": repr(b), "lhs": repr(lhs),
                                     "rhs": repr(rhs)}))
    return cases


# -- weyl / moyal / gz -----------------------------------------------------------

def _monomial_corpus(rng, count, vars=("x1", "x2"), lo=-3, hi=3):
    out = []
    seen = set()
    while len(out) < count:
        e = (rng.randint(lo, hi), rng.randint(lo, hi))
        if e in seen:
            continue
        seen.add(e)
        out.append(Laurent2.monomial(e[0], e[1], 1, vars))
    return out

def suite_gz(order: int = 5, corpus: int = 20, samples: int = 50,
             seed: int = 7):
    cases = []
    rng = random.Random(seed)
    mons = _monomial_corpus(rng, corpus)

    for i in range(corpus):
        f = mons[i]
        g = mons[(i + 7) % corpus]
        ok = gz_equals_moyal(f, g, order)
        cases.append(_case(
            f"gz-moyal-{i}", ok,
            "universal element reproduces binomial coefficients",
            inputs={"f": laurent_to_json(f), "g": laurent_to_json(g),
                    "order": order},
            witness=None if ok else {"f": repr(f), "g": repr(g)}))

    x1 = Laurent2.var1()
    x2 = Laurent2.var2()
    comm = moyal_star(x1, x2, 2) - moyal_star(x2, x1, 2)
    ok = (comm.coeff(0).is_zero() and comm.coeff(2).is_zero()
          and (comm.coeff(1) + Laurent2.const(I)).is_zero())
    cases.append(_case("moyal-canonical-commutator", ok,
                       "coordinate commutator is -i hbar"))

    for i in range(samples):
        f, g, h = (rng.choice(mons) for _ in range(3))
        ok = _moyal_assoc_ok(f, g, h, order)
        cases.append(_case(
            f"moyal-assoc-{i}", ok, "associativity of the star product",
            inputs={"f": laurent_to_json(f), "g": laurent_to_json(g),
                    "h": laurent_to_json(h), "order": order},
            witness=None if ok else {"f": repr(f), "g": repr(g), "h": repr(h)}))

    for i in range(6):
        f = rng.choice(mons)
        g = rng.choice(mons)
        a = WeylSection.of_base(f, bound=4)
        b = WeylSection.of_base(g, bound=4)
        prod = a.weyl_mul(b)
        sig = prod.sigma()
        ok = (sig.coeff(0) - f * g).is_zero()
        cases.append(_case(f"weyl-center-sigma-{i}", ok,
                           "center projection is multiplicative at order 0",
                           inputs={"f": laurent_to_json(f),
                                   "g": laurent_to_json(g)}))
    return cases


def _moyal_assoc_ok(f, g, h, order) -> bool:
    for n in range(order + 1):
        left = Laurent2.zero(f.vars)
        right = Laurent2.zero(f.vars)
        for i in range(n + 1):
            left = left + moyal_coefficient(moyal_coefficient(f, g, i), h, n - i)
            right = right + moyal_coefficient(f, moyal_coefficient(g, h, i), n - i)
        if not left.eq_trunc(right):
            return False
    return True


# -- geometry --------------------------------------------------------------------

FLAT_MUS = ("0", "x2", "x2*x1", "x2*x1^2")
NONFLAT_MUS = ("x1", "x2^2*x1")


def _mu_from_tag(tag: str) -> Laurent2:
    return parse_mu(tag)


def preserving_germs(trunc: int = 10):
    """Nonlinear germs preserving mu = x2, mu = x2*x1 respectively."""
    out = []
    for nu, tag in ((Series1.const(1, trunc), "x2"),
                    (Series1.x(trunc), "x2*x1")):
        for (a, b) in ((2, 0), (1, 1), (2, 1)):
            out.append((tag, _mu_from_tag(tag),
                        connection_preserving_germ(nu, a, b, trunc=trunc)))
    return out


def suite_geometry(trunc: int = 10, seed: int = 7):
    cases = []

    for tag in FLAT_MUS + NONFLAT_MUS:
        mu = _mu_from_tag(tag)
        conn = Connection2D.from_mu(mu)
        expected = tag in FLAT_MUS
        ok = conn.is_flat() == expected and conn.matches_family()
        cases.append(_case(f"geom-curv-{tag}", ok,
                           "curvature vanishes exactly on the family",
                           inputs={"mu": tag, "flat": expected}))

    ms = MomentSystem()
    for c in ms.bracket_cases():
        cases.append(_case(f"geom-{c['id']}", c["ok"],
                           "moment maps represent the bracket"))
    for c in ms.diag_cases():
        cases.append(_case(f"geom-{c['id']}", c["ok"],
                           "invariant fields diagonalize the moments"))

    def x_fn(f):
        return ms.e_tilde(f)

    def y_fn(f):
        return ms.h_tilde(f) * half(1)

    us = [Laurent2.monomial(2, 1, 1, ms.vars), Laurent2.monomial(1, 3, 1, ms.vars),
          Laurent2.monomial(0, 2, 1, ms.vars),
          Laurent2.monomial(3, 2, Fraction(1, 2), ms.vars)]
    for name in ("H", "E", "F", "P", "Q"):
        lam = ms.moment(name)
        for n in (0, 2, 3, 4, 5):
            bad = None
            for u in us:
                d = (fd.rc_apply(n, lam, u, x_fn, y_fn, lambda p, q: p * q)
                     - fd.rc_apply(n, u, lam, x_fn, y_fn, lambda p, q: p * q))
                if not d.is_zero():
                    bad = (u, d)
                    break
            cases.append(_case(
                f"geom-rc-moment-sym-{name}-n{n}", bad is None,
                "brackets with a moment are symmetric away from order 1",
                witness=None if bad is None else {"u": repr(bad[0]),
                                                  "diff": repr(bad[1])}))

    pres = preserving_germs(trunc)
    for i, (tag, mu, phi) in enumerate(pres):
        ok = (not phi.is_affine()
              and invariance_defect(mu, phi).eq_trunc(Laurent2.zero()))
        cases.append(_case(f"geom-preserving-{tag}-{i}", ok,
                           "solved germs leave the connection invariant",
                           inputs={"mu": tag, "germ": germ_to_json(phi)}))

    dp = ps.delta2_prime()
    scan = {}
    for s in (1, -1):
        for dirname in ("phi", "phi_inv"):
            ok_all = True
            for tag, mu, phi in pres:
                om = omega_from_mu(mu)
                lifted = (phi if dirname == "phi" else phi.inverse()).pullback(om)
                rhs = (lifted - om) * s
                lhs = h1_act(dp, CrossedElement.of(1, germ=phi))
                got = lhs.terms.get(phi, Laurent2.zero())
                if set(lhs.terms) - {phi} or not got.eq_trunc(rhs):
                    ok_all = False
                    break
            scan[(s, dirname)] = ok_all
    passing = sorted(k for k, v in scan.items() if v)
    cases.append(_case(
        "geom-delta2-inner-scan", passing == [(1, "phi_inv")],
        "unique orientation: delta2'(U) = (Omega o lift(phi^-1) - Omega) U",
        inputs={"passing": [list(map(str, k)) for k in passing]},
        witness=None if passing == [(1, "phi_inv")] else
        {"passing": [list(map(str, k)) for k in passing]}))

    for i, (tag, mu, phi) in enumerate(pres):
        om = omega_from_mu(mu)
        a = CrossedElement.of(Laurent2.monomial(1, -1, Fraction(1, 2)), germ=phi)
        omega_el = CrossedElement.of(om)
        lhs = h1_act(dp, a)
        rhs = omega_el * a * Scalar.of(-1) + a * omega_el
        ok = lhs.eq_trunc(rhs)
        cases.append(_case(f"geom-delta2-inner-{tag}-{i}", ok,
                           "delta2' acts as the inner commutator [-Omega, .]",
                           inputs={"mu": tag, "germ": germ_to_json(phi)}))

    zero_mu = Laurent2.zero()
    moebs = [DiffeoGerm.moebius(1, 0, 1, 1), DiffeoGerm.moebius(2, 1, 1, 1),
             DiffeoGerm.moebius(1, 1, -1, 1)]
    for i, phi in enumerate(moebs):
        inv_zero = invariance_defect(zero_mu, phi).eq_trunc(Laurent2.zero())
        act = h1_act(dp, CrossedElement.of(1, germ=phi))
        dp_zero = act.is_zero() or act.eq_trunc(CrossedElement.zero())
        cases.append(_case(f"geom-invariance-delta2-moebius-{i}",
                           inv_zero and dp_zero,
                           "exact-form germs: invariant and delta2'-flat",
                           inputs={"germ": germ_to_json(phi)}))

    quad = DiffeoGerm.from_coeffs({1: 1, 2: 1}, trunc=trunc)
    inv_zero = invariance_defect(zero_mu, quad).eq_trunc(Laurent2.zero())
    act = h1_act(dp, CrossedElement.of(1, germ=quad))
    dp_zero = act.eq_trunc(CrossedElement.zero())
    cases.append(_case("geom-invariance-delta2-quad",
                       (not inv_zero) and (not dp_zero),
                       "a non-projective germ breaks both sides together",
                       inputs={"germ": germ_to_json(quad)}))

    s = schwarzian(quad)
    want = [-6, 24, -72, 192, -480]
    ok = all(s.coeffs[k] == Scalar.of(want[k]) for k in range(5))
    cases.append(_case("geom-schwarzian-quad", ok,
                       "frozen series digits for the quadratic germ",
                       witness=None if ok else
                       {"got": [str(c) for c in s.coeffs[:5]], "want": want}))

    rng = random.Random(seed)
    exact_pool = moebs + [DiffeoGerm.linear(2), DiffeoGerm.affine(1, 3)]
    based_pool = [quad, quad.inverse(), DiffeoGerm.linear(2),
                  DiffeoGerm.moebius(1, 0, 1, 1), pres[0][2]]
    # Series coefficients live in a chart around 0, so pairs in the cocycle
    # identity must both fix that base point.
    cocycle_pool = [DiffeoGerm.moebius(1, 0, 1, 1),
                    DiffeoGerm.moebius(2, 0, 1, 1),
                    DiffeoGerm.linear(2), DiffeoGerm.linear(-1),
                    quad, quad.inverse(), pres[0][2]]
    for i in range(8):
        phi = rng.choice(cocycle_pool)
        psi = rng.choice(cocycle_pool)
        d = delta_cocycle_defect(phi, psi)
        cases.append(_case(f"geom-cocycle-{i}", d.eq_trunc(Laurent2.zero()),
                           "the delta1 multiplier is a group cocycle",
                           inputs={"phi": germ_to_json(phi),
                                   "psi": germ_to_json(psi)}))

    for i in range(6):
        mu = _mu_from_tag(rng.choice(FLAT_MUS))
        phi = rng.choice(exact_pool + based_pool)
        a = pushforward_mu(mu, phi)
        b = pushforward_mu_closed(mu, phi)
        cases.append(_case(f"geom-pushforward-{i}", a.eq_trunc(b),
                           "general transport matches the closed transport",
                           inputs={"mu": mu_tag(mu), "germ": germ_to_json(phi)}))
    return cases


# -- fedosov ---------------------------------------------------------------------

def suite_fedosov(order: int = 3, seed: int = 7, samples: int = 6,
                  mus=FLAT_MUS, crossed_order: int = 2):
    cases = []
    rng = random.Random(seed)
    mons = _monomial_corpus(rng, 12, lo=-2, hi=2)
    bound = 2 * order + 2

    for tag in mus:
        mu = _mu_from_tag(tag)

        for j, f in enumerate(mons[:3]):
            flat = fd.flat_section(f, mu, bound)
            sec = flat.section()
            ok = fd.fedosov_D(sec, mu).eq_trunc(WeylSection({}, vars=sec.vars))
            cases.append(_case(f"fed-flat-D-{tag}-{j}", ok,
                               "the recursive section is flat",
                               inputs={"mu": tag, "f": laurent_to_json(f)}))
            dd = fd.fedosov_D(fd.fedosov_D(sec, mu), mu)
            cases.append(_case(f"fed-D2-{tag}-{j}",
                               dd.eq_trunc(WeylSection({}, vars=sec.vars)),
                               "the connection squares to zero on sections",
                               inputs={"mu": tag, "f": laurent_to_json(f)}))

        f = mons[0]
        flat = fd.flat_section(f, mu, bound)
        fix = fd.flat_section_fixpoint(f, mu, bound)
        ok = flat.section().eq_trunc(fix)
        defects = fd.flat_recursion_defects(flat)
        ok = ok and all(d.eq_trunc(Laurent2.zero()) for d in defects)
        for m in range(0, 3):
            for n in range(0, 3):
                got = flat.coeff(m, n)
                want = fd.closed_form_x2(flat, m, n)
                ok = ok and got.eq_trunc(want)
        cases.append(_case(f"fed-recursions-agree-{tag}", ok,
                           "table, fixpoint, and closed form coincide",
                           inputs={"mu": tag, "f": laurent_to_json(f)}))

        one = Laurent2.const(1)
        st = fd.fedosov_star(f, one, mu, order)
        ok = st.coeff(0).eq_trunc(f) and all(
            st.coeff(k).eq_trunc(Laurent2.zero()) for k in range(1, order + 1))
        cases.append(_case(f"fed-star-unit-{tag}", ok,
                           "the constant function is a star unit",
                           inputs={"mu": tag}))

        x1 = Laurent2.var1()
        x2 = Laurent2.var2()
        comm = fd.fedosov_star(x1, x2, mu, 2) - fd.fedosov_star(x2, x1, mu, 2)
        ok = (comm.coeff(0).eq_trunc(Laurent2.zero())
              and (comm.coeff(1) + Laurent2.const(I)).eq_trunc(Laurent2.zero())
              and comm.coeff(2).eq_trunc(Laurent2.zero()))
        cases.append(_case(f"fed-canonical-{tag}", ok,
                           "coordinate commutator is -i hbar",
                           inputs={"mu": tag}))

        for i in range(samples):
            a, b, c = (rng.choice(mons) for _ in range(3))
            d = fd.star_assoc_defect(a, b, c, mu, order)
            ok = all(d.coeff(k).eq_trunc(Laurent2.zero())
                     for k in range(order + 1))
            cases.append(_case(
                f"fed-star-assoc-{tag}-{i}", ok, "associativity",
                inputs={"mu": tag, "f": laurent_to_json(a),
                        "g": laurent_to_json(b), "h": laurent_to_json(c)},
                witness=None if ok else {"f": repr(a), "g": repr(b),
                                         "h": repr(c), "defect": repr(d)}))

        for i in range(3):
            a, b = rng.choice(mons), rng.choice(mons)
            got = fd.fedosov_star(a, b, mu, order)
            want = fd.star_oracle(a, b, mu, order)
            ok = got.eq_trunc(want)
            cases.append(_case(
                f"fed-star-oracle-{tag}-{i}", ok,
                "geometric product matches the direct-sum oracle",
                inputs={"mu": tag, "f": laurent_to_json(a),
                        "g": laurent_to_json(b)}))
            rc_ok = True
            for n in range(order + 1):
                lhs = got.coeff(n)
                rhs = fd.rc_star_coefficient(n, a, b, mu)
                if not lhs.eq_trunc(rhs):
                    rc_ok = False
                    break
            cases.append(_case(
                f"fed-rc-star-{tag}-{i}", rc_ok,
                "star coefficients equal the bracket pairing",
                inputs={"mu": tag, "f": laurent_to_json(a),
                        "g": laurent_to_json(b)}))

        c1_ok = True
        for i in range(3):
            a, b = rng.choice(mons), rng.choice(mons)
            got = fd.fedosov_star(a, b, mu, 1).coeff(1)
            anti = got - fd.fedosov_star(b, a, mu, 1).coeff(1)
            pois = (a.partial1() * b.partial2() - a.partial2() * b.partial1())
            if not anti.eq_trunc(pois * (-I)):
                c1_ok = False
        cases.append(_case(f"fed-star-poisson-{tag}", c1_ok,
                           "first-order antisymmetry is the Poisson bracket",
                           inputs={"mu": tag}))

    # the mu = 0 product transported to the orbit chart is Moyal
    ms = MomentSystem()
    zero = Laurent2.zero()
    ok = True
    for i in range(4):
        a, b = rng.choice(mons), rng.choice(mons)
        st = fd.fedosov_star(a, b, zero, order)
        ta, tb = ms.transport(a), ms.transport(b)
        my = moyal_star(ta, tb, order)
        for j in range(2):
            if not ms.transport(st.coeff(j)).eq_trunc(my.coeff(j)):
                ok = False
    cases.append(_case("fed-mu0-transport-moyal", ok,
                       "flat product matches Moyal through the chart map"))

    sign_ops = fd.gauge_transform_order2()
    ok = sign_ops is not None and sign_ops[0] == 1
    witness = None
    if sign_ops is not None:
        witness = {"sign": sign_ops[0],
                   "ops": [[j, a, b, str(c)] for (j, a, b, c) in sign_ops[1]]}
    cases.append(_case("fed-gauge-order2", ok,
                       "order-2 chart discrepancy is an exact coboundary",
                       inputs=witness, witness=None if ok else witness))

    # crossed product vs the Hopf-element evaluation; germs must preserve
    # the connection or the two sides have no reason to agree
    preserving = {
        "0": [DiffeoGerm.identity(), DiffeoGerm.affine(2, 1),
              DiffeoGerm.linear(-1)],
        "x2": [DiffeoGerm.identity(), DiffeoGerm.affine(1, 3),
               DiffeoGerm.linear(-1)],
        "x2*x1": [DiffeoGerm.identity()],
    }
    for tag in mus[:3]:
        mu = _mu_from_tag(tag)
        pool = preserving.get(tag, [DiffeoGerm.identity()])
        for i in range(2):
            a = ps.sample_crossed(rng, pool)
            b = ps.sample_crossed(rng, pool)
            got = fd.crossed_star(a, b, mu, crossed_order)
            for mode in ("minus_x", "antipode"):
                want = fd.chi_rc_star(a, b, mu, crossed_order, sx_mode=mode)
                ok = fd.crossed_tables_eq(got, want, N=crossed_order)
                cases.append(_case(
                    f"fed-crossed-chi-{mode}-{tag}-{i}", ok,
                    "crossed product equals the evaluated element (affine)",
                    inputs={"mu": tag, "mode": mode,
                            "a": crossed_to_json(a), "b": crossed_to_json(b)},
                    witness=None if ok else {"a": repr(a), "b": repr(b)}))

    nonlin = connection_preserving_germ(Series1.const(1, 10), 2, 0, trunc=10)
    mu = _mu_from_tag("x2")
    a = CrossedElement.of(Laurent2.monomial(1, -1), germ=nonlin)
    b = CrossedElement.of(Laurent2.monomial(0, 2), germ=nonlin.inverse())
    got = fd.crossed_star(a, b, mu, crossed_order)
    ok_anti = fd.crossed_tables_eq(
        got, fd.chi_rc_star(a, b, mu, crossed_order, sx_mode="antipode"),
        N=crossed_order)
    ok_minus = fd.crossed_tables_eq(
        got, fd.chi_rc_star(a, b, mu, crossed_order, sx_mode="minus_x"),
        N=crossed_order)
    cases.append(_case("fed-crossed-chi-antipode-nonlinear",
                       ok_anti and not ok_minus,
                       "nonlinear germs need the full antipode twist",
                       inputs={"mu": "x2"}))
    return cases


# -- prop61 / poisson structure --------------------------------------------------

def germ_pool(name: str, trunc: int = 10):
    """Named germ pools for the sampled checks."""
    if name == "affine+quadratic":
        return ps.default_pseudogroup(trunc)
    if name == "affine":
        return [DiffeoGerm.identity(), DiffeoGerm.linear(2),
                DiffeoGerm.linear(-1)]
    raise ValueError(f"unknown pseudogroup {name!r}; "
                     f"known: affine, affine+quadratic")


def suite_prop61(samples: int = 12, seed: int = 7, trunc: int = 10,
                 mus=("0", "x2", "x2*x1"), op_samples: int = 2,
                 solve: bool = False, pseudogroup: str = "affine+quadratic"):
    cases = []

    cases.append(_case("prop61-abstract-identity", ps.poisson_identity_holds(),
                       "b(B) equals the bracket defect in the tensor algebra"))

    defect = ps.defect_tensor()
    cases.append(_case("prop61-defect-3cocycle",
                       hochschild_b(defect).is_zero(),
                       "the defect is a 3-cocycle"))

    rng = random.Random(seed)
    pool = germ_pool(pseudogroup, trunc)
    pieces = _b_second_pieces()
    for k, piece in enumerate(pieces):
        bt = hochschild_b(piece)
        coch = ps.Cochain(piece)
        ok_all = True
        bad = None
        for i in range(op_samples):
            a = ps.sample_crossed(rng, pool)
            b = ps.sample_crossed(rng, pool)
            c = ps.sample_crossed(rng, pool)
            lhs = ps.hochschild_b_eval(coch, a, b, c)
            rhs = ps.Cochain(bt).evaluate((a, b, c))
            if not lhs.eq_trunc(rhs):
                ok_all = False
                bad = (a, b, c)
                break
        cases.append(_case(
            f"prop61-b-op-{k}", ok_all,
            "algebraic coboundary matches the operator coboundary",
            witness=None if ok_all else {"a": repr(bad[0]), "b": repr(bad[1]),
                                         "c": repr(bad[2])}))

    for i, t in enumerate([ps.b_prime_tensor(), ps.b_second_tensor(),
                           fd.rc_element(1)]):
        ok = hochschild_b(hochschild_b(t)).is_zero()
        cases.append(_case(f"prop61-bb-zero-{i}", ok,
                           "the coboundary squares to zero"))

    for c in ps.verify_prop61(samples=samples, seed=seed, trunc=trunc, mus=mus,
                              pool=pool):
        c["ref"] = "sampled bracket identity on the crossed product"
        cases.append(_case(c["id"], c["ok"], c["ref"],
                           witness=c.get("witness")))

    if solve:
        sol, diff_is_cocycle = _solve_case()
        cases.append(_case("prop61-resolved-b", sol is not None
                           and diff_is_cocycle,
                           "exact solver re-derives a valid bounding element"))
    return cases


def _b_second_pieces():
    dp = ps.delta2_prime()
    y = H1Element.y()
    y2 = y * y
    y3 = y2 * y
    return [
        TensorElement.of(dp * y2, y).scale(2),
        TensorElement.of(dp * y, y2).scale(2),
        TensorElement.of(dp, y3).scale(Fraction(2, 3)),
        TensorElement.of(dp * y, y).scale(2),
        TensorElement.of(dp, y2),
    ]


def _solve_case():
    sol = ps.solve_bounding_cochain()
    if sol is None:
        return None, False
    diff = sol.tensor - ps.bounding_cochain().tensor
    return sol, hochschild_b(diff).is_zero()


# -- modular ---------------------------------------------------------------------

def suite_modular(prec: int = 20, order: int = 4, assoc_prec: int = 30):
    cases = []
    P = max(prec, 12)
    e2, e4, e6, D = md.E2(P), md.E4(P), md.E6(P), md.delta(P)

    cases.append(_case("mod-ramanujan-delta",
                       (md.d_form(D) - e2 * D).is_zero(),
                       "the cusp form's logarithmic derivative"))

    ok = (md.x_op(md.one(P)).is_zero()
          and (md.x_op(e4) - e6 * Fraction(-1, 3)).is_zero()
          and md.x_op(D).is_zero())
    cases.append(_case("mod-xop-table", ok,
                       "weight-raising operator on the generators"))

    ok = True
    for f in (e4, e6, D, e4 * e6):
        lhs = md.y_half_weight(md.x_op(f)) - md.x_op(md.y_half_weight(f))
        if not (lhs - md.x_op(f)).is_zero():
            ok = False
    cases.append(_case("mod-yx-commutator", ok,
                       "grading relation [Y, X] = X"))

    c = md.proportional_to_delta(md.rc_modular(1, e4, e6))
    cases.append(_case("mod-rc1-e4e6-delta", c == -3456,
                       "first bracket of the generators is a cusp multiple",
                       inputs={"constant": str(c)}))

    for n in range(0, order + 1):
        a = md.rc_modular(n, e4, e6)
        b = md.rc_modular(n, e6, e4)
        ok = (a - b).is_zero() if n % 2 == 0 else (a + b).is_zero()
        cases.append(_case(f"mod-rc-sym-n{n}", ok,
                           "brackets alternate symmetry with order"))

    pool = {"E4": e4, "E6": e6, "Delta": D}
    for n in range(0, 4):
        for fn, f in pool.items():
            for gn, g in pool.items():
                r = md.rc_modular(n, f, g)
                ok = md.membership(r) is not None
                cases.append(_case(f"mod-rc-membership-n{n}-{fn}-{gn}", ok,
                                   "brackets stay inside the graded ring"))

    eA, eB, eC = md.E4(assoc_prec), md.E6(assoc_prec), md.delta(assoc_prec)
    triples = [(eA, eA, eB), (eA, eB, eC), (eB, eB, eA), (eC, eA, eA),
               (eA, eC, eB)]
    for i, (f, g, h) in enumerate(triples):
        defects = md.zagier_assoc_defect(f, g, h, order)
        ok = all(d.is_zero() for d in defects)
        cases.append(_case(f"mod-zagier-assoc-{i}", ok,
                           "the deformation multiplies associatively",
                           inputs={"weights": [f.weight, g.weight, h.weight],
                                   "order": order}))

    om = md.omega_form(P)
    ok = True
    for n in range(0, order + 1):
        for (f, g) in [(e4, e6), (e6, D), (D, e4)]:
            got = fd.rc_apply(n, f, g, md.x_op, md.y_half_weight,
                              lambda a, b: a * b, omega=om)
            if not (got - md.rc_modular(n, f, g)).is_zero():
                ok = False
    cases.append(_case("mod-chain-realization", ok,
                       "the generic chain recursion reproduces the brackets"))

    Q2, Q4, Q6 = (md.QuasiForm.gen(n) for n in ("E2", "E4", "E6"))
    ok = ((Q2.d_op() - (Q2 * Q2 - Q4) * Fraction(1, 12)).is_zero()
          and (Q4.d_op() - (Q2 * Q4 - Q6) * Fraction(1, 3)).is_zero()
          and (Q6.d_op() - (Q2 * Q6 - Q4 * Q4) * Fraction(1, 2)).is_zero())
    cases.append(_case("mod-quasi-ramanujan", ok,
                       "derivation closes on the symbolic ring"))

    ok = (Q2.qexpansion(P) == e2.q
          and md.QuasiForm.delta_sym().qexpansion(P) == D.q
          and Q4.x_op().depth() == 0 and Q2.depth() == 1)
    cases.append(_case("mod-quasi-expansion", ok,
                       "symbolic ring lines up with the q-expansions"))
    return cases


# -- registry --------------------------------------------------------------------

SUITES = {
    "hopf": suite_hopf,
    "gz": suite_gz,
    "weyl-moyal": suite_gz,
    "geometry": suite_geometry,
    "fedosov": suite_fedosov,
    "modular": suite_modular,
    "prop61": suite_prop61,
}


def run_suite(name: str, **config):
    fn = SUITES.get(name)
    if fn is None:
        raise ValueError(f"unknown suite {name!r}; known: "
                         f"{sorted(SUITES)} and 'all'")
    import inspect
    allowed = set(inspect.signature(fn).parameters)
    kw = {k: v for k, v in config.items() if k in allowed and v is not None}
    return fn(**kw)


def run_all(**config):
    cases = []
    for name in ("hopf", "gz", "geometry", "fedosov", "modular", "prop61"):
        cases.extend(run_suite(name, **config))
    return cases
