"""Line-oriented "key = value" documents for equations and case parameters.

Blank lines and text after '#' are ignored.  Lists are bracketed and comma
separated; every scalar is a constant expression of the expression language
(so "ln(6+6*sqrt(7))" or "pi*i/3" are fine).
"""
from __future__ import annotations

from .algebra import Tolerance
from .equation import Branch, TrinomialPDDE, Variant
from .errors import ConfigError, ParseError, TrinomialError
from .parser import format_expression, format_scalar, parse_constant, parse_expression, parse_poly
from .solutions import CaseParameters, UnivariateComponent

EQUATION_KEYS = ("n", "i", "j", "a", "b", "omega", "alpha", "beta", "c", "g", "variant")
EQUATION_OPTIONAL = ("abs_tol", "rel_tol")
PARAM_KEYS = ("theorem", "case", "branch", "sign", "L", "L1", "L2", "k", "d", "H", "H1",
              "H2", "B1", "E1", "E2", "R", "R2", "R3", "R4", "xi", "fourier", "phi")


def read_document(text: str) -> dict:
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}", key)
        out[key] = value
    return out


def split_list(value: str, key: str) -> list:
    value = value.strip()
    if not (value.startswith("[") and value.endswith("]")):
        raise ConfigError(f"{key}: expected a bracketed list", key)
    body = value[1:-1]
    # split on top-level commas only: entries may contain parenthesised calls
    items, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or items:
        items.append(tail)
    if any(not x for x in items):
        raise ConfigError(f"{key}: empty list entry", key)
    return items


def _const(value: str, key: str) -> complex:
    try:
        return parse_constant(value)
    except (ParseError, TrinomialError) as exc:
        raise ConfigError(f"{key}: {exc}", key) from exc


def _int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {value!r}", key) from None


def _cvec(value: str, key: str) -> tuple:
    return tuple(_const(x, key) for x in split_list(value, key))


def parse_equation_config(text: str) -> TrinomialPDDE:
    doc = read_document(text)
    for key in doc:
        if key not in EQUATION_KEYS + EQUATION_OPTIONAL:
            raise ConfigError(f"unknown key {key!r}", key)
    for key in EQUATION_KEYS:
        if key not in doc:
            raise ConfigError(f"missing key {key!r}", key)
    n = _int(doc["n"], "n")
    if n < 1:
        raise ConfigError("n must be positive", "n")
    try:
        g = parse_poly(doc["g"], n)
    except (ParseError, TrinomialError) as exc:
        raise ConfigError(f"g: {exc}", "g") from exc
    try:
        variant = Variant(doc["variant"].strip().lower())
    except ValueError:
        raise ConfigError("variant must be 'shift' or 'difference'", "variant") from None
    tol = Tolerance(float(doc.get("abs_tol", 1e-9)), float(doc.get("rel_tol", 1e-9)))
    return TrinomialPDDE(
        n=n, i=_int(doc["i"], "i"), j=_int(doc["j"], "j"),
        a=_const(doc["a"], "a"), b=_const(doc["b"], "b"), omega=_const(doc["omega"], "omega"),
        alpha=_const(doc["alpha"], "alpha"), beta=_const(doc["beta"], "beta"),
        c=_cvec(doc["c"], "c"), g=g, variant=variant, tol=tol,
    )


def format_equation_config(eq: TrinomialPDDE) -> str:
    lines = [
        f"n = {eq.n}", f"i = {eq.i}", f"j = {eq.j}",
        f"a = {format_scalar(eq.a)}", f"b = {format_scalar(eq.b)}",
        f"omega = {format_scalar(eq.omega)}",
        f"alpha = {format_scalar(eq.alpha)}", f"beta = {format_scalar(eq.beta)}",
        "c = [" + ", ".join(format_scalar(x) for x in eq.c) + "]",
        f"g = {format_expression(eq.g)}",
        f"variant = {eq.variant.value}",
    ]
    return "\n".join(lines) + "\n"


def _fourier(value: str, key: str) -> tuple:
    out = []
    for item in split_list(value, key):
        if ":" not in item:
            raise ConfigError(f"{key}: entries look like k:coeff", key)
        k, coeff = item.split(":", 1)
        out.append((_int(k.strip(), key), _const(coeff, key)))
    return tuple(out)


def parse_params(text: str, eq: TrinomialPDDE, theorem: str | None = None,
                 case: str | None = None) -> CaseParameters:
    """Case parameters; theorem/case may come from the file or the caller.

    ``fourier = [k:coeff, ...]`` adds a periodic component with period tau;
    ``phi`` is an expression in z1 standing for w (case 2.2(i)).
    """
    doc = read_document(text)
    for key in doc:
        if key not in PARAM_KEYS:
            raise ConfigError(f"unknown key {key!r}", key)
    theorem = theorem or doc.get("theorem")
    case = case or doc.get("case")
    if theorem is None or case is None:
        raise ConfigError("theorem and case are required", "theorem" if theorem is None else "case")
    kw: dict = {}
    if "branch" in doc:
        try:
            kw["branch"] = Branch(doc["branch"].strip().lower())
        except ValueError:
            raise ConfigError("branch must be 'plus' or 'minus'", "branch") from None
    if "sign" in doc:
        sign = doc["sign"].strip()
        if sign not in ("+", "-", "1", "-1", "+1"):
            raise ConfigError("sign must be + or -", "sign")
        kw["sign"] = -1 if sign.startswith("-") else 1
    for key in ("L", "L1", "L2", "d", "H", "H1", "H2"):
        if key in doc:
            kw[key] = _cvec(doc[key], key)
    if "k" in doc:
        if "L" in kw:
            raise ConfigError("give either L or k, not both", "k")
        kw["L"] = _cvec(doc["k"], "k")
    for key in ("B1", "E1", "E2", "R", "R2", "R3", "R4", "xi"):
        if key in doc:
            kw[key] = _const(doc[key], key)
    try:
        if "fourier" in doc:
            kw["periodic"] = (UnivariateComponent.periodic(eq.tau, _fourier(doc["fourier"],
                                                                               "fourier")),)
        if "phi" in doc:
            kw["phi"] = UnivariateComponent.from_expoly(parse_expression(doc["phi"], 1))
        return CaseParameters(theorem, case, **kw)
    except ConfigError:
        raise
    except (ParseError, TrinomialError) as exc:
        raise ConfigError(str(exc)) from exc


def format_params(p: CaseParameters) -> str:
    """Inverse of parse_params for everything but an explicit phi."""
    lines = [f"theorem = {p.theorem}", f"case = {p.case}", f"branch = {p.branch.value}",
             f"sign = {'+' if p.sign > 0 else '-'}"]
    vec_key = "k" if (p.theorem, p.case) == ("2.2", "iii") else "L"
    for key, name in (("L", vec_key), ("L1", "L1"), ("L2", "L2"), ("d", "d"),
                      ("H", "H"), ("H1", "H1"), ("H2", "H2")):
        v = getattr(p, key)
        if v is not None:
            lines.append(f"{name} = [" + ", ".join(format_scalar(x) for x in v) + "]")
    for key in ("B1", "E1", "E2", "R", "R2", "R3", "R4", "xi"):
        v = getattr(p, key)
        if v is not None:
            lines.append(f"{key} = {format_scalar(v)}")
    fourier = [t for comp in p.periodic if comp.kind == "fourier" for t in comp.fourier]
    if fourier:
        lines.append("fourier = [" + ", ".join(f"{k}:{format_scalar(a)}" for k, a in fourier) + "]")
    if p.phi is not None:
        lines.append(f"phi = {format_expression(p.phi.in_w())}")
    return "\n".join(lines) + "\n"
