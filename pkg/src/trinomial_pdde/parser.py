"""Expression language for exponential polynomials.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*        divisor must be constant
    unary  := ('-' | '+') unary | factor
    factor := atom ('^' uint)?
    atom   := number | 'i' | 'pi' | 'z'digits | '(' expr ')'
            | 'exp(' expr ')' | 'sqrt(' expr ')' | 'ln(' expr ')'

exp needs a polynomial argument, sqrt and ln a constant one.  Unary minus
binds looser than '^', so -z1^2 is -(z1^2).  Constants fold with the
principal-branch csqrt / clog of :mod:`trinomial_pdde.algebra`.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .algebra import Poly, as_cx, clog, csqrt
from .errors import ArityError, DomainError, NonFiniteError, ParseError
from .exppoly import ExpPoly

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<var>z\d+)
  | (?P<name>[A-Za-z_]\w*)
  | (?P<op>[-+*/^(),])
""", re.VERBOSE)

_FUNCS = ("exp", "sqrt", "ln")


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, arity: int):
        self.toks = tokenize(text)
        self.k = 0
        self.arity = arity

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def take(self, text=None, kind=None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.kind != "end" else "end of input"
            raise ParseError(f"expected {want}, found {got}", t.pos)
        self.k += 1
        return t

    def parse(self) -> ExpPoly:
        value = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return value

    def expr(self) -> ExpPoly:
        value = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> ExpPoly:
        value = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                value = value * rhs
            else:
                d = rhs.as_constant()
                if d is None:
                    raise ParseError("division by a non-constant expression", op.pos)
                if d == 0:
                    raise ParseError("division by zero", op.pos)
                value = value / d
        return value

    def unary(self) -> ExpPoly:
        if self.tok.text == "-":
            self.take()
            return -self.unary()
        if self.tok.text == "+":
            self.take()
            return self.unary()
        return self.factor()

    def factor(self) -> ExpPoly:
        base = self.atom()
        if self.tok.text == "^":
            caret = self.take()
            t = self.tok
            if t.kind != "num" or not t.text.isdigit():
                raise ParseError("exponent must be a non-negative integer literal", t.pos)
            self.take()
            if int(t.text) > 64:
                raise ParseError("exponent too large", caret.pos)
            base = base ** int(t.text)
        return base

    def const(self, value) -> ExpPoly:
        return ExpPoly.constant(self.arity, value)

    def atom(self) -> ExpPoly:
        t = self.tok
        if t.kind == "num":
            self.take()
            return self.const(float(t.text))
        if t.kind == "var":
            self.take()
            k = int(t.text[1:])
            if not 1 <= k <= self.arity:
                raise ParseError(f"variable {t.text} outside z1..z{self.arity}", t.pos)
            return ExpPoly.from_poly(Poly.variable(self.arity, k))
        if t.text == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if t.kind == "name":
            self.take()
            if t.text == "i":
                return self.const(1j)
            if t.text == "pi":
                return self.const(math.pi)
            if t.text in _FUNCS:
                return self.call(t)
            raise ParseError(f"unknown name {t.text!r}", t.pos)
        got = repr(t.text) if t.kind != "end" else "end of input"
        raise ParseError(f"expected a value, found {got}", t.pos)

    def call(self, name: Token) -> ExpPoly:
        self.take("(")
        start = self.tok.pos
        arg = self.expr()
        self.take(")")
        try:
            if name.text == "exp":
                q = arg.as_poly()
                if q is None:
                    raise ParseError("exp argument must be a polynomial", start)
                return ExpPoly.exp(q)
            c = arg.as_constant()
            if c is None:
                raise ParseError(f"{name.text} argument must be constant", start)
            return self.const(csqrt(c) if name.text == "sqrt" else clog(c))
        except (DomainError, NonFiniteError) as exc:
            raise ParseError(f"{name.text}: {exc}", start) from exc


def parse_expression(text: str, arity: int) -> ExpPoly:
    if arity < 1:
        raise ArityError("arity must be at least 1")
    return _Parser(text, arity).parse()


def parse_poly(text: str, arity: int) -> Poly:
    p = parse_expression(text, arity).as_poly()
    if p is None:
        raise ParseError("expected a polynomial (no exp terms)", 0)
    return p


def parse_constant(text: str) -> complex:
    c = parse_expression(str(text), 1).as_constant()
    if c is None:
        raise ParseError("expected a constant expression", 0)
    return as_cx(c)


# ---------------------------------------------------------------- formatting

def _real(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def format_scalar(c: complex) -> str:
    """Round-trippable spelling: 3, (-3), 0.5, (2*i), (1.5-2*i)."""
    c = complex(c)
    re_, im = c.real, c.imag
    if im == 0:
        s = _real(re_)
        return f"({s})" if re_ < 0 else s
    ims = f"{_real(abs(im))}*i"
    if re_ == 0:
        return f"({'-' if im < 0 else ''}{ims})"
    return f"({_real(re_)}{'-' if im < 0 else '+'}{ims})"


def _monomial(m) -> str:
    parts = []
    for k, e in enumerate(m):
        if e == 1:
            parts.append(f"z{k + 1}")
        elif e > 1:
            parts.append(f"z{k + 1}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for m, c in p.items():
        mono = _monomial(m)
        if not mono:
            out.append(format_scalar(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{format_scalar(c)}*{mono}")
    return " + ".join(out)


def format_expression(f) -> str:
    """Canonical text for an ExpPoly (or Poly); parse_expression inverts it."""
    if isinstance(f, Poly):
        return format_poly(f)
    if f.is_empty():
        return "0"
    out = []
    for t in f.terms:
        has_exp = not t.exponent.is_zero()
        if t.coeff.is_constant():
            c = t.coeff.constant_term
            coeff = "" if (c == 1 and has_exp) else format_scalar(c)
        else:
            coeff = f"({format_poly(t.coeff)})" if has_exp else format_poly(t.coeff)
        parts = [coeff] if coeff else []
        if has_exp:
            parts.append(f"exp({format_poly(t.exponent)})")
        out.append("*".join(parts))
    return " + ".join(out)
