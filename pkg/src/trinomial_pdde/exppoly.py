"""Exponential polynomials: finite sums  sum_k p_k(z) * exp(q_k(z)).

Canonical form keeps exponents without constant term (the constant is folded
into the coefficient as a factor exp(q(0))), merges terms whose exponents are
structurally identical, prunes zero coefficients and orders terms by a fixed
key.  Every instance also carries ``scale``, the largest coefficient
magnitude met while it was built; :meth:`ExpPoly.is_zero` measures leftover
coefficients against it so cancellation of large terms is judged relatively.
"""
from __future__ import annotations

import cmath
from typing import NamedTuple, Sequence

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    Poly,
    Tolerance,
    _accumulate,
    as_cx,
    cexp,
)
from .errors import ArityError, EvaluationError


class ExpTerm(NamedTuple):
    coeff: Poly
    exponent: Poly


def _term_key(t: ExpTerm):
    return (t.exponent.degree, t.exponent.sort_key(), t.coeff.sort_key())


class ExpPoly:
    __slots__ = ("arity", "terms", "scale", "_hash")

    def __init__(self, arity: int, terms: Sequence[ExpTerm] = (), scale: float = 0.0):
        # Low-level constructor; callers go through _build so the canonical
        # invariants hold.
        self.arity = arity
        self.terms = tuple(terms)
        self.scale = float(scale)
        self._hash = None

    # ------------------------------------------------------------ builders
    @classmethod
    def _build(cls, arity: int, pairs, scale: float = 0.0) -> "ExpPoly":
        """Canonicalise (coeff, exponent) pairs; exponents must lack constants."""
        contributions = []
        for coeff, exponent in pairs:
            if coeff.arity != arity or exponent.arity != arity:
                raise ArityError("term arity mismatch")
            if exponent.constant_term != 0:
                raise ValueError("exponent with constant term reached _build")
            contributions.extend(((exponent, m), c) for m, c in coeff.items())
        merged = _accumulate(contributions)
        grouped: dict = {}
        for (exponent, m), c in merged.items():
            grouped.setdefault(exponent, {})[m] = c
        terms = [ExpTerm(Poly(arity, mons), exponent) for exponent, mons in grouped.items()]
        terms.sort(key=_term_key)
        top = max((t.coeff.max_abs() for t in terms), default=0.0)
        return cls(arity, terms, max(scale, top))

    @classmethod
    def zero(cls, arity: int) -> "ExpPoly":
        return cls(arity)

    @classmethod
    def constant(cls, arity: int, value) -> "ExpPoly":
        return cls.from_poly(Poly.constant(arity, value))

    @classmethod
    def from_poly(cls, p: Poly) -> "ExpPoly":
        return cls._build(p.arity, [(p, Poly.zero(p.arity))])

    @classmethod
    def exp(cls, q: Poly) -> "ExpPoly":
        """exp(q) with the constant of q folded into the coefficient."""
        factor = cexp(q.constant_term)
        return cls._build(q.arity, [(Poly.constant(q.arity, factor), q.without_constant())])

    # ------------------------------------------------------------ inspection
    def is_empty(self) -> bool:
        return not self.terms

    def as_poly(self) -> Poly | None:
        """The polynomial this equals, if every exponent is zero."""
        if not self.terms:
            return Poly.zero(self.arity)
        if len(self.terms) == 1 and self.terms[0].exponent.is_zero():
            return self.terms[0].coeff
        return None

    def as_constant(self) -> complex | None:
        p = self.as_poly()
        if p is not None and p.is_constant():
            return p.constant_term
        return None

    def coefficient_of(self, exponent: Poly) -> Poly:
        for t in self.terms:
            if t.exponent == exponent:
                return t.coeff
        return Poly.zero(self.arity)

    def growth_order(self) -> int:
        """Order of growth: the largest total degree among the exponents."""
        return max((t.exponent.degree for t in self.terms), default=0)

    def max_abs(self) -> float:
        return max((t.coeff.max_abs() for t in self.terms), default=0.0)

    def __eq__(self, other):
        if isinstance(other, ExpPoly):
            return self.arity == other.arity and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, self.terms))
        return self._hash

    def __repr__(self):
        from .parser import format_expression

        return f"ExpPoly({format_expression(self)})"

    # ------------------------------------------------------------ ring
    def _coerce(self, other) -> "ExpPoly":
        if isinstance(other, ExpPoly):
            if other.arity != self.arity:
                raise ArityError(f"arity mismatch {self.arity} vs {other.arity}")
            return other
        if isinstance(other, Poly):
            if other.arity != self.arity:
                raise ArityError(f"arity mismatch {self.arity} vs {other.arity}")
            return ExpPoly.from_poly(other)
        return ExpPoly.constant(self.arity, other)

    def __add__(self, other):
        other = self._coerce(other)
        return ExpPoly._build(self.arity, [*self.terms, *other.terms],
                              max(self.scale, other.scale))

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly(self.arity, [ExpTerm(-t.coeff, t.exponent) for t in self.terms],
                       self.scale)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (ExpPoly, Poly)):
            c = as_cx(other)
            return ExpPoly._build(self.arity, [(t.coeff * c, t.exponent) for t in self.terms],
                                  self.scale * abs(c))
        other = self._coerce(other)
        pairs = [(s.coeff * t.coeff, s.exponent + t.exponent)
                 for s in self.terms for t in other.terms]
        return ExpPoly._build(self.arity, pairs, self.scale * other.scale)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (ExpPoly, Poly)):
            raise TypeError("only division by scalars is supported")
        return self * (1 / as_cx(c))

    def __pow__(self, k: int):
        out = ExpPoly.constant(self.arity, 1)
        for _ in range(k):
            out = out * self
        return out

    # ------------------------------------------------------------ operators
    def directional(self, alpha, beta, i: int, j: int) -> "ExpPoly":
        """alpha d/dz_i + beta d/dz_j, termwise D(p e^q) = (Dp + p Dq) e^q."""
        pairs = []
        for t in self.terms:
            dp = t.coeff.directional(alpha, beta, i, j)
            dq = t.exponent.directional(alpha, beta, i, j)
            pairs.append((dp + t.coeff * dq, t.exponent))
        return ExpPoly._build(self.arity, pairs)

    def partial(self, k: int) -> "ExpPoly":
        pairs = [(t.coeff.partial(k) + t.coeff * t.exponent.partial(k), t.exponent)
                 for t in self.terms]
        return ExpPoly._build(self.arity, pairs)

    def translate(self, c: Sequence) -> "ExpPoly":
        """f(z + c); constants of the shifted exponents fold into coefficients."""
        if len(c) != self.arity:
            raise ArityError(f"shift of length {len(c)} for arity {self.arity}")
        pairs = []
        for t in self.terms:
            q = t.exponent.translate(c)
            factor = cexp(q.constant_term)
            pairs.append((t.coeff.translate(c) * factor, q.without_constant()))
        return ExpPoly._build(self.arity, pairs)

    def delta(self, c: Sequence) -> "ExpPoly":
        """Forward difference f(z + c) - f(z)."""
        return self.translate(c) - self

    def compose_linear(self, lin: Poly) -> "ExpPoly":
        """Substitute the variable of an arity-1 ExpPoly by a constant-free form."""
        if self.arity != 1:
            raise ArityError("compose_linear needs an arity-1 ExpPoly")
        if lin.constant_term != 0:
            raise ValueError("substituted form must have no constant term")
        pairs = [(t.coeff.compose_univariate(lin), t.exponent.compose_univariate(lin))
                 for t in self.terms]
        return ExpPoly._build(lin.arity, pairs)

    # ------------------------------------------------------------ zero test
    def _group_totals(self, tol: Tolerance) -> list:
        groups: list = []
        for t in self.terms:
            for g in groups:
                if g[0].approx_eq(t.exponent, tol):
                    g[1] = g[1] + t.coeff
                    break
            else:
                groups.append([t.exponent, t.coeff])
        return groups

    def is_zero(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        """Decide f == 0 via linear independence of distinct exponentials.

        A sum of p_k e^{q_k} with pairwise non-constant exponent differences
        vanishes only if every p_k does, so it suffices to inspect the merged
        coefficients.  Exponents that agree within ``tol`` are grouped first:
        rounding can leave two copies of one exponent differing in the last
        bits, and they must cancel against each other.
        """
        bound = tol.bound(self.scale)
        return all(total.max_abs() <= bound for _, total in self._group_totals(tol))

    def defect(self, tol: Tolerance = DEFAULT_TOL) -> float:
        """Largest grouped coefficient, relative to max(1, scale)."""
        worst = max((total.max_abs() for _, total in self._group_totals(tol)), default=0.0)
        return worst / max(1.0, self.scale)

    def approx_eq(self, other, tol: Tolerance = DEFAULT_TOL) -> bool:
        return (self - self._coerce(other)).is_zero(tol)

    # ------------------------------------------------------------ evaluation
    def __call__(self, z: Sequence) -> complex:
        if len(z) != self.arity:
            raise ArityError(f"point of length {len(z)} for arity {self.arity}")
        total = 0j
        for t in self.terms:
            try:
                e = cmath.exp(t.exponent(z))
            except OverflowError as exc:
                raise EvaluationError(f"exp overflow at {tuple(z)}") from exc
            total += t.coeff(z) * e
        if not cmath.isfinite(total):
            raise EvaluationError(f"non-finite value at {tuple(z)}")
        return total

    def eval_many(self, Z: np.ndarray) -> np.ndarray:
        """Vectorised evaluation; overflowing points come back non-finite."""
        Z = np.asarray(Z, dtype=complex)
        total = np.zeros(Z.shape[:-1], dtype=complex)
        with np.errstate(over="ignore", invalid="ignore"):
            for t in self.terms:
                total = total + t.coeff.eval_many(Z) * np.exp(t.exponent.eval_many(Z))
        return total


# Function-style aliases for the operation names used in the docs.
def ep_from_poly(p: Poly) -> ExpPoly:
    return ExpPoly.from_poly(p)


def ep_exp(q: Poly) -> ExpPoly:
    return ExpPoly.exp(q)


def ep_is_zero(f: ExpPoly, tol: Tolerance = DEFAULT_TOL) -> bool:
    return f.is_zero(tol)
