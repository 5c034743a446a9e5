"""JSON ASTs for the values that cross the CLI boundary.

Every dump/load pair round-trips bit-exactly. Loaders validate the shape
and raise ValueError with a message naming what was wrong; the CLI maps
those to exit code 2.
"""

import hashlib
import json
import sys
from fractions import Fraction

from .scalar import Scalar
from .laurent import Laurent2
from .qseries import QSeries
from .germ import DiffeoGerm
from .hopf import H1Element, TensorElement
from .weyl import HbarSeries
from .crossed import CrossedElement
from . import modular


def _frac_pair(c) -> list:
    f = Fraction(c)
    return [f.numerator, f.denominator]


# -- laurent ---------------------------------------------------------------------

def laurent_to_json(f: Laurent2) -> dict:
    d = {"type": "laurent", "vars": list(f.vars),
         "terms": [[e1, e2, f.terms[(e1, e2)].to_json()]
                   for (e1, e2) in sorted(f.terms)]}
    if f.prec1 is not None:
        d["prec1"] = f.prec1
    return d


def laurent_from_json(d) -> Laurent2:
    if not isinstance(d, dict) or d.get("type") != "laurent":
        raise ValueError("expected a laurent AST with type='laurent'")
    vars = tuple(d.get("vars", ("x1", "x2")))
    terms = {}
    for entry in d.get("terms", []):
        e1, e2, c = entry
        terms[(int(e1), int(e2))] = Scalar.from_json(c)
    return Laurent2(terms, vars=vars, prec1=d.get("prec1"))


# -- q-series and modular forms -------------------------------------------------

def qseries_to_json(q: QSeries, weight=None) -> dict:
    d = {"type": "qseries", "prec": q.prec,
         "terms": [[n, _frac_pair(q.coeffs[n])] for n in sorted(q.coeffs)]}
    if weight is not None:
        d["weight"] = weight
    return d


def qseries_from_json(d) -> QSeries:
    if not isinstance(d, dict) or d.get("type") != "qseries":
        raise ValueError("expected a qseries AST with type='qseries'")
    coeffs = {int(n): Fraction(num, den) for n, (num, den) in d.get("terms", [])}
    return QSeries(coeffs, int(d["prec"]))


def modular_to_json(f) -> dict:
    return qseries_to_json(f.q, weight=f.weight)


def modular_from_json(d):
    if "weight" not in d:
        raise ValueError("modular form AST needs a weight tag")
    return modular.ModularForm(qseries_from_json(d), int(d["weight"]))


def named_form(name: str, prec: int):
    """Resolve a built-in form name (E2, E4, E6, Delta, 1)."""
    ctor = modular.NAMED.get(name)
    if ctor is None:
        raise ValueError(f"unknown form name {name!r}; "
                         f"built-ins: {sorted(modular.NAMED)}")
    return ctor(prec)


# -- germs, hopf elements, tensors ----------------------------------------------

def germ_to_json(g: DiffeoGerm) -> dict:
    return g.to_json()


def germ_from_json(d) -> DiffeoGerm:
    return DiffeoGerm.from_json(d)


def h1_to_json(h: H1Element) -> dict:
    return h.to_json()


def h1_from_json(d) -> H1Element:
    return H1Element.from_json(d)


def tensor_to_json(t: TensorElement) -> dict:
    terms = []
    for key in sorted(t.terms):
        factors = [{"delta": list(g), "y": a, "x": b} for (g, a, b) in key]
        terms.append({"factors": factors, "c": t.terms[key].to_json()})
    return {"type": "h1-tensor", "arity": t.arity, "terms": terms}


def tensor_from_json(d) -> TensorElement:
    if not isinstance(d, dict) or d.get("type") != "h1-tensor":
        raise ValueError("expected an h1-tensor AST")
    arity = int(d["arity"])
    terms = {}
    for t in d.get("terms", []):
        key = tuple((tuple(f["delta"]), int(f["y"]), int(f["x"]))
                    for f in t["factors"])
        if len(key) != arity:
            raise ValueError("tensor term arity mismatch")
        terms[key] = Scalar.from_json(t["c"])
    return TensorElement(terms, arity)


def crossed_to_json(e: CrossedElement) -> dict:
    pairs = sorted(e.terms.items(), key=lambda kv: kv[0].key())
    return {"type": "crossed", "vars": list(e.vars),
            "terms": [[germ_to_json(g), laurent_to_json(f)] for g, f in pairs]}


def crossed_from_json(d) -> CrossedElement:
    if not isinstance(d, dict) or d.get("type") != "crossed":
        raise ValueError("expected a crossed AST")
    terms = {}
    for g, f in d.get("terms", []):
        terms[germ_from_json(g)] = laurent_from_json(f)
    return CrossedElement(terms, vars=tuple(d.get("vars", ("x1", "x2"))))


def hbar_to_json(h: HbarSeries) -> dict:
    return {"type": "hbar", "order": h.order, "vars": list(h.vars),
            "coeffs": [[k, laurent_to_json(h.coeffs[k])]
                       for k in sorted(h.coeffs)]}


def hbar_from_json(d) -> HbarSeries:
    if not isinstance(d, dict) or d.get("type") != "hbar":
        raise ValueError("expected an hbar AST")
    coeffs = {int(k): laurent_from_json(f) for k, f in d.get("coeffs", [])}
    return HbarSeries(coeffs, order=int(d["order"]),
                      vars=tuple(d.get("vars", ("x1", "x2"))))


def connection_to_json(mu: Laurent2) -> dict:
    return {"mu": laurent_to_json(mu), "family": "conn-gen"}


def connection_from_json(d) -> Laurent2:
    if not isinstance(d, dict) or "mu" not in d:
        raise ValueError("expected a connection AST with a 'mu' field")
    return laurent_from_json(d["mu"])


EXPRESSION_LOADERS = {
    "laurent": laurent_from_json,
    "qseries": qseries_from_json,
    "germ": germ_from_json,
    "h1": h1_from_json,
    "h1-tensor": tensor_from_json,
    "crossed": crossed_from_json,
    "hbar": hbar_from_json,
}


def expression_from_json(d):
    """Dispatch a loaded JSON dict to the right loader by its type tag."""
    if not isinstance(d, dict):
        raise ValueError("expression JSON must be an object")
    kind = d.get("type")
    loader = EXPRESSION_LOADERS.get(kind)
    if loader is None:
        raise ValueError(f"unknown expression type {kind!r}; "
                         f"known: {sorted(EXPRESSION_LOADERS)}")
    return loader(d)


# -- CLI argument helpers --------------------------------------------------------

def load_json_arg(arg: str):
    """Load a JSON value from an inline literal, a file path, or '-' (stdin)."""
    text = arg
    if arg == "-":
        text = sys.stdin.read()
    elif not arg.lstrip().startswith(("{", "[")):
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise ValueError(f"cannot read {arg!r}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from exc


def parse_mu(text: str, vars=("x1", "x2")) -> Laurent2:
    """Connection coefficient from a CLI argument.

    Accepts '-' (stdin JSON), a path to a JSON file, an inline laurent or
    connection AST, or a shorthand like '0', 'x2', 'x2*x1', '3/2*x2*x1^2',
    with '+'-separated addends.
    """
    stripped = text.strip()
    if stripped == "-" or stripped.startswith("{") or stripped.endswith(".json"):
        d = load_json_arg(stripped)
        if isinstance(d, dict) and d.get("type") == "laurent":
            return laurent_from_json(d)
        return connection_from_json(d)
    if stripped == "0":
        return Laurent2.zero(vars)
    total = Laurent2.zero(vars)
    for addend in stripped.split("+"):
        coeff = Fraction(1)
        e1 = e2 = 0
        for factor in addend.strip().split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in mu shorthand {text!r}")
            if factor[0] in "x" and "^" in factor:
                base, _, exp = factor.partition("^")
            else:
                base, exp = factor, "1"
            if base == vars[0] or base == "x1":
                e1 += int(exp)
            elif base == vars[1] or base == "x2":
                e2 += int(exp)
            else:
                try:
                    coeff *= Fraction(factor)
                except ValueError:
                    raise ValueError(
                        f"cannot parse mu factor {factor!r} in {text!r}") from None
        total = total + Laurent2.monomial(e1, e2, coeff, vars)
    return total


def mu_tag(mu: Laurent2) -> str:
    """Short stable label for a connection, used in case ids."""
    if not mu.terms:
        return "0"
    parts = []
    for (e1, e2) in sorted(mu.terms):
        c = mu.terms[(e1, e2)]
        piece = ""
        if not (c.re == 1 and c.im == 0):
            piece = f"{c}*"
        if e2:
            piece += "x2" + (f"^{e2}" if e2 != 1 else "")
        if e1:
            if piece and not piece.endswith("*"):
                piece += "*"
            piece += "x1" + (f"^{e1}" if e1 != 1 else "")
        parts.append(piece or "1")
    return "+".join(parts)


def dumps_canonical(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1)


def digest(obj) -> str:
    """Short content digest of a JSON-able value, for report input ids."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]
