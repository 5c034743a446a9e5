"""Command line front end.

Computation subcommands (star, flat-section, rc, modular, hopf) evaluate one
expression and print it; verification subcommands (verify, solve-b) run the
identity suites and can write a schema-versioned JSON report.

Expression arguments accept inline JSON, a file path, or "-" for stdin;
plain Laurent inputs also accept the short grammar used for connections,
e.g. "x1^2*x2" or "3/2*x2". Exit codes: 0 when every check passes, 1 when a
verification case fails (the report carries a witness), 2 on malformed input.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import fedosov as fd
from . import modular as md
from . import poisson as ps
from . import suites as su
from .crossed import CrossedElement, h1_act
from .geometry import omega_from_mu
from .hopf import hochschild_b
from .laurent import Laurent2
from .report import VerificationReport, strip_timing
from .serialize import (crossed_to_json, dumps_canonical, expression_from_json,
                        h1_from_json, h1_to_json, hbar_to_json,
                        laurent_to_json, load_json_arg, modular_from_json,
                        modular_to_json, mu_tag, named_form, parse_mu,
                        tensor_to_json)


def load_expression(arg):
    """JSON (inline, path, stdin) or the short Laurent grammar."""
    if arg == "-" or arg.lstrip().startswith(("{", "[")) or arg.endswith(".json"):
        return expression_from_json(load_json_arg(arg))
    return parse_mu(arg)


def load_form(arg, prec):
    """A named built-in (E2, E4, E6, Delta) or a weighted q-series JSON."""
    if arg in md.NAMED:
        return named_form(arg, prec)
    return modular_from_json(load_json_arg(arg))


def emit(args, payload_json, text_lines):
    if args.format == "json":
        print(dumps_canonical(payload_json))
    else:
        for line in text_lines:
            print(line)


# -- computation subcommands ------------------------------------------------------


def cmd_star(args):
    f = parse_mu(args.f)
    g = parse_mu(args.g)
    mu = parse_mu(args.mu)
    h = fd.fedosov_star(f, g, mu, args.order)
    lines = [f"hbar^{k}: {h.coeff(k)!r}" for k in range(args.order + 1)]
    emit(args, hbar_to_json(h), lines)
    return 0


def cmd_flat_section(args):
    f = parse_mu(args.f)
    mu = parse_mu(args.mu)
    flat = fd.flat_section(f, mu, args.deg)
    keys = sorted(flat.table)
    rows = [[m, n, laurent_to_json(flat.table[(m, n)])] for m, n in keys]
    payload = {"type": "flat-section", "bound": args.deg,
               "mu": laurent_to_json(mu), "terms": rows}
    lines = [f"a[{m},{n}]: {flat.table[(m, n)]!r}" for m, n in keys]
    emit(args, payload, lines)
    return 0


def cmd_rc(args):
    f = parse_mu(args.f)
    g = parse_mu(args.g)
    mu = parse_mu(args.mu)
    omega = None if mu.is_zero() else omega_from_mu(mu)
    out = fd.rc_apply(args.n, f, g,
                      lambda u: u.x_op(), lambda u: u.y_op(),
                      lambda a, b: a * b, omega=omega)
    emit(args, laurent_to_json(out), [repr(out)])
    return 0


def _delta_multiple(h):
    """The constant c with h = c * Delta, or None if h is not a multiple."""
    if h.weight != 12 or h.prec < 2:
        return None
    return md.proportional_to_delta(h)


def cmd_modular_rc(args):
    f = load_form(args.f, args.prec)
    g = load_form(args.g, args.prec)
    h = md.rc_modular(args.n, f, g)
    c = _delta_multiple(h)
    payload = modular_to_json(h)
    payload["delta_multiple"] = (None if c is None
                                 else [c.numerator, c.denominator])
    lines = [f"weight {h.weight}: {h.q!r}"]
    if c is not None:
        lines.append(f"= {c} * Delta")
    emit(args, payload, lines)
    return 0


def cmd_modular_assoc(args):
    f = load_form(args.f, args.prec)
    g = load_form(args.g, args.prec)
    h = load_form(args.h, args.prec)
    defects = md.zagier_assoc_defect(f, g, h, args.order)
    ok = all(d.is_zero() for d in defects)
    payload = {"check": "zagier-assoc", "order": args.order,
               "prec": args.prec, "ok": ok,
               "defects": [[n, repr(d)] for n, d in enumerate(defects)
                           if not d.is_zero()]}
    lines = [f"t^{n}: {'0' if d.is_zero() else repr(d)}"
             for n, d in enumerate(defects)]
    lines.append("PASS" if ok else "FAIL")
    emit(args, payload, lines)
    return 0 if ok else 1


def cmd_hopf(args):
    h = h1_from_json(load_json_arg(args.element))
    if args.op == "coproduct":
        t = h.coproduct()
        emit(args, tensor_to_json(t), [repr(t)])
    elif args.op == "antipode":
        s = h.antipode()
        emit(args, h1_to_json(s), [repr(s)])
    elif args.op == "counit":
        c = h.counit()
        emit(args, {"type": "scalar", "value": c.to_json()}, [str(c)])
    else:
        if args.target is None:
            raise ValueError("hopf act needs a target expression")
        target = load_expression(args.target)
        if isinstance(target, Laurent2):
            target = CrossedElement.of(target)
        out = h1_act(h, target)
        emit(args, crossed_to_json(out), [repr(out)])
    return 0


# -- verification subcommands -----------------------------------------------------


def _suite_config(args):
    mus = None
    if args.mu:
        mus = tuple(mu_tag(parse_mu(m)) for m in args.mu)
    config = {"seed": args.seed, "order": args.order, "prec": args.prec,
              "trunc": args.trunc, "samples": args.samples,
              "pseudogroup": args.pseudogroup, "mus": mus,
              "solve": True if args.solve else None}
    return {k: v for k, v in config.items() if v is not None}


def _run_cases(target, config):
    kw = dict(config)
    if "mus" in kw:
        kw["mus"] = tuple(kw["mus"])
    if target == "all":
        return su.run_all(**kw)
    return su.run_suite(target, **kw)


def _apply_filter(cases, token):
    if token in (None, "all"):
        return cases
    kept = [c for c in cases if token in c["id"]]
    if not kept:
        raise ValueError(f"sub-suite filter {token!r} matched no cases")
    return kept


def cmd_verify(args):
    if args.replay:
        return _replay(args)
    if args.target is None:
        raise ValueError("verify needs a suite name or --replay <report>")
    config = _suite_config(args)
    stored = dict(config)
    stored["target"] = args.target
    if args.suite and args.suite != "all":
        stored["filter"] = args.suite
    rep = VerificationReport(args.target, stored)
    rep.extend(_apply_filter(_run_cases(args.target, config), args.suite))
    rep.finish()
    if args.target == "prop61":
        rep.extras["resolved_b"] = tensor_to_json(ps.bounding_cochain().tensor)
    if args.report:
        rep.write(args.report)
    if args.format == "json":
        print(dumps_canonical(rep.to_json()))
    else:
        print(rep.text())
    return 0 if rep.ok() else 1


def _replay(args):
    """Rerun the suite recorded in a report and confirm the same outcome."""
    data = load_json_arg(args.replay)
    if not isinstance(data, dict) or "config" not in data or "suite" not in data:
        raise ValueError("replay expects a verification report JSON")
    stored = dict(data["config"])
    target = stored.pop("target", data["suite"])
    token = stored.pop("filter", None)
    cases = _apply_filter(_run_cases(target, stored), token)
    old = {c["id"]: c["status"] for c in data.get("cases", [])}
    new = {c["id"]: "PASS" if c["ok"] else "FAIL" for c in cases}
    diffs = sorted(set(old) ^ set(new))
    diffs += sorted(k for k in set(old) & set(new) if old[k] != new[k])
    if diffs:
        for k in diffs:
            print(f"DIVERGED {k}: recorded {old.get(k)!r}, got {new.get(k)!r}")
        return 1
    fails = sum(1 for v in new.values() if v != "PASS")
    print(f"replay reproduced {len(new)} cases ({fails} FAIL), no divergence")
    return 0


def cmd_solve_b(args):
    rep = VerificationReport("solve-b", {})
    sol = ps.solve_bounding_cochain()
    ok = sol is not None and hochschild_b(sol.tensor) == ps.defect_tensor()
    rep.add({"id": "solve-b-exact", "ok": ok,
             "ref": "solved element satisfies b(B) = [RC1, RC1]"})
    rep.finish()
    if sol is not None:
        rep.extras["resolved_b"] = tensor_to_json(sol.tensor)
    if args.report:
        rep.write(args.report)
    if args.format == "json":
        print(dumps_canonical(rep.to_json()))
    else:
        print(rep.text())
        if sol is not None:
            print(f"B = {sol.tensor!r}")
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="rcq",
        description="exact star products, Hopf actions, and their verification")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("star", parents=[common],
                       help="star product of two Laurent functions")
    q.add_argument("f")
    q.add_argument("g")
    q.add_argument("--mu", default="0", help="connection coefficient")
    q.add_argument("--order", type=int, default=6, help="hbar truncation")
    q.set_defaults(fn=cmd_star)

    q = sub.add_parser("flat-section", parents=[common], help="flat extension in the Weyl bundle")
    q.add_argument("f")
    q.add_argument("--mu", default="0")
    q.add_argument("--deg", type=int, default=6, help="total fiber degree bound")
    q.set_defaults(fn=cmd_flat_section)

    q = sub.add_parser("rc", parents=[common], help="Rankin-Cohen bracket on Laurent functions")
    q.add_argument("f")
    q.add_argument("g")
    q.add_argument("--n", type=int, default=1, help="bracket order")
    q.add_argument("--mu", default="0")
    q.set_defaults(fn=cmd_rc)

    q = sub.add_parser("modular", help="q-expansion backend")
    msub = q.add_subparsers(dest="modular_command", required=True)
    m = msub.add_parser("rc", parents=[common], help="bracket of two modular forms")
    m.add_argument("f")
    m.add_argument("g")
    m.add_argument("--n", type=int, default=1)
    m.add_argument("--prec", type=int, default=20, help="q-expansion length")
    m.set_defaults(fn=cmd_modular_rc)
    m = msub.add_parser("assoc", parents=[common], help="associativity defect of the t-product")
    m.add_argument("f")
    m.add_argument("g")
    m.add_argument("h")
    m.add_argument("--order", type=int, default=4, help="t truncation")
    m.add_argument("--prec", type=int, default=30)
    m.set_defaults(fn=cmd_modular_assoc)

    q = sub.add_parser("hopf", parents=[common], help="coproduct, antipode, counit, act")
    q.add_argument("op", choices=("coproduct", "antipode", "counit", "act"))
    q.add_argument("element", help="element JSON")
    q.add_argument("target", nargs="?", help="expression acted on (act only)")
    q.set_defaults(fn=cmd_hopf)

    q = sub.add_parser("verify", parents=[common], help="run an identity suite")
    q.add_argument("target", nargs="?",
                   choices=sorted(su.SUITES) + ["all"],
                   help="suite name, or 'all'")
    q.add_argument("--suite", default="all",
                   help="sub-suite filter: substring on case ids")
    q.add_argument("--seed", type=int, default=None)
    q.add_argument("--order", type=int, default=None)
    q.add_argument("--prec", type=int, default=None)
    q.add_argument("--trunc", type=int, default=None, help="germ series order")
    q.add_argument("--samples", type=int, default=None)
    q.add_argument("--mu", action="append", default=None,
                   help="connection (repeatable)")
    q.add_argument("--pseudogroup", choices=("affine", "affine+quadratic"),
                   default=None)
    q.add_argument("--solve", action="store_true",
                   help="also re-derive the bounding element exactly")
    q.add_argument("--report", metavar="PATH", help="write the JSON report")
    q.add_argument("--replay", metavar="REPORT",
                   help="rerun a recorded report and compare outcomes")
    q.set_defaults(fn=cmd_verify)

    q = sub.add_parser("solve-b", parents=[common], help="exact solve for the bounding element")
    q.add_argument("--report", metavar="PATH")
    q.set_defaults(fn=cmd_solve_b)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
