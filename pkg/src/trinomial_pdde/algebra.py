"""Complex scalars with fixed branch conventions and sparse polynomials in C^n.

Scalars are plain Python ``complex`` values.  Polynomials are immutable maps
from exponent tuples (multi-indices) to nonzero complex coefficients; every
public method returns a new object.  Axis numbers are 1-based throughout, to
match the ``z1 … zn`` variable names used by the expression language.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ArityError, AxisError, DomainError, NonFiniteError, ValidationError

Monomial = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be strictly positive")

    def bound(self, scale: float) -> float:
        return self.abs_tol + self.rel_tol * scale


DEFAULT_TOL = Tolerance()


# ---------------------------------------------------------------- scalars

def as_cx(x) -> complex:
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteError(f"non-finite scalar {z!r}")
    return z


def _unsign_zero(x: complex) -> complex:
    # -0.0 components would put results on the wrong side of a branch cut
    return complex(x.real + 0.0, x.imag + 0.0)


def csqrt(x) -> complex:
    """Principal square root: Re >= 0, and Im >= 0 when Re == 0."""
    r = cmath.sqrt(_unsign_zero(as_cx(x)))
    if r.real == 0 and r.imag < 0:
        r = -r
    return _unsign_zero(r)


def clog(x) -> complex:
    """Principal logarithm with Im in (-pi, pi]."""
    x = _unsign_zero(as_cx(x))
    if x == 0:
        raise DomainError("logarithm of zero")
    return cmath.log(x)


def cexp(x) -> complex:
    try:
        r = cmath.exp(as_cx(x))
    except OverflowError as exc:
        raise NonFiniteError(f"exp overflow at {x!r}") from exc
    return as_cx(r)


def approx_eq(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    x, y = complex(x), complex(y)
    return abs(x - y) <= tol.abs_tol + tol.rel_tol * max(abs(x), abs(y))


def format_cx(x: complex, digits: int = 12) -> str:
    x = complex(x)
    if x.imag == 0:
        return f"{x.real:.{digits}g}"
    sign = "+" if x.imag >= 0 else "-"
    return f"{x.real:.{digits}g}{sign}{abs(x.imag):.{digits}g}i"


# ---------------------------------------------------------------- polynomials

def grlex_key(m: Monomial):
    return (sum(m), m)


def _accumulate(pairs: Iterable[tuple]) -> dict:
    """Sum complex contributions per key with correctly rounded (fsum) totals."""
    re: dict = {}
    im: dict = {}
    for key, value in pairs:
        re.setdefault(key, []).append(value.real)
        im.setdefault(key, []).append(value.imag)
    out = {}
    for key in re:
        v = complex(math.fsum(re[key]), math.fsum(im[key]))
        if v != 0:
            out[key] = v
    return out


class Poly:
    """Sparse polynomial in ``arity`` complex variables.

    Coefficients are pruned only when exactly zero; approximate comparisons
    go through :meth:`approx_eq` with an explicit :class:`Tolerance`.
    """

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Mapping | None = None):
        if arity < 1:
            raise ArityError("arity must be at least 1")
        self.arity = arity
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != arity or any(e < 0 for e in m):
                raise ArityError(f"bad multi-index {m} for arity {arity}")
            c = as_cx(c)
            if c != 0:
                clean[m] = c
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, arity):
        return cls(arity)

    @classmethod
    def constant(cls, arity, value):
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def variable(cls, arity, k):
        _check_axis(k, arity)
        m = [0] * arity
        m[k - 1] = 1
        return cls(arity, {tuple(m): 1})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0):
        n = len(coeffs)
        terms = {(0,) * n: const}
        for k, a in enumerate(coeffs):
            m = [0] * n
            m[k] = 1
            terms[tuple(m)] = a
        return cls(n, terms)

    @classmethod
    def univariate_in(cls, coeffs: Sequence, lin: "Poly"):
        """Return sum_k coeffs[k] * lin**k (Horner)."""
        out = cls.zero(lin.arity)
        for a in reversed(list(coeffs)):
            out = out * lin + a
        return out

    # inspection
    def items(self):
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))

    def coeff(self, m) -> complex:
        return self._terms.get(tuple(m), 0j)

    @property
    def constant_term(self) -> complex:
        return self._terms.get((0,) * self.arity, 0j)

    def without_constant(self) -> "Poly":
        terms = dict(self._terms)
        terms.pop((0,) * self.arity, None)
        return Poly(self.arity, terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def max_abs(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def linear_part(self) -> list:
        out = []
        for k in range(self.arity):
            m = [0] * self.arity
            m[k] = 1
            out.append(self.coeff(m))
        return out

    def variables(self) -> set:
        return {k + 1 for m in self._terms for k, e in enumerate(m) if e}

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.arity == other.arity and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, tuple(self.items())))
        return self._hash

    def sort_key(self):
        return tuple((grlex_key(m), c.real, c.imag) for m, c in self.items())

    def __repr__(self):
        if not self._terms:
            return "Poly(0)"
        parts = []
        for m, c in self.items():
            mono = "*".join(
                f"z{k + 1}" + (f"^{e}" if e > 1 else "") for k, e in enumerate(m) if e
            )
            parts.append(f"({format_cx(c)})" + (f"*{mono}" if mono else ""))
        return "Poly(" + " + ".join(parts) + ")"

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.arity != self.arity:
                raise ArityError(f"arity mismatch {self.arity} vs {other.arity}")
            return other
        return Poly.constant(self.arity, other)

    def __add__(self, other):
        other = self._coerce(other)
        return Poly(self.arity, _accumulate(
            [*self._terms.items(), *other._terms.items()]))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.arity, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_cx(other)
            return Poly(self.arity, {m: a * c for m, a in self._terms.items()})
        other = self._coerce(other)
        return Poly(self.arity, _accumulate(
            (tuple(x + y for x, y in zip(m1, m2)), a * b)
            for m1, a in self._terms.items()
            for m2, b in other._terms.items()
        ))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.constant(self.arity, 1)
        for _ in range(k):
            out = out * self
        return out

    # calculus
    def partial(self, k: int) -> "Poly":
        _check_axis(k, self.arity)
        terms = {}
        for m, c in self._terms.items():
            e = m[k - 1]
            if e:
                mm = list(m)
                mm[k - 1] = e - 1
                terms[tuple(mm)] = c * e
        return Poly(self.arity, terms)

    def directional(self, alpha, beta, i: int, j: int) -> "Poly":
        """alpha * d/dz_i + beta * d/dz_j."""
        return Poly(self.arity, _accumulate(
            [*(self.partial(i) * alpha)._terms.items(),
             *(self.partial(j) * beta)._terms.items()]))

    def translate(self, c: Sequence) -> "Poly":
        """Exact binomial expansion of p(z + c)."""
        c = [as_cx(x) for x in c]
        if len(c) != self.arity:
            raise ArityError(f"shift of length {len(c)} for arity {self.arity}")

        def contributions():
            for m, a in self._terms.items():
                for sub in product(*(range(e + 1) for e in m)):
                    w = a
                    for e, s, ck in zip(m, sub, c):
                        if s != e:
                            w = w * (math.comb(e, s) * ck ** (e - s))
                    yield sub, w

        return Poly(self.arity, _accumulate(contributions()))

    def compose_univariate(self, lin: "Poly") -> "Poly":
        """Substitute the single variable of an arity-1 polynomial by ``lin``."""
        if self.arity != 1:
            raise ArityError("compose_univariate needs an arity-1 polynomial")
        coeffs = [0j] * (self.degree + 1)
        for (e,), c in self._terms.items():
            coeffs[e] = c
        return Poly.univariate_in(coeffs, lin)

    # evaluation
    def __call__(self, z: Sequence) -> complex:
        if len(z) != self.arity:
            raise ArityError(f"point of length {len(z)} for arity {self.arity}")
        z = [complex(x) for x in z]
        total = 0j
        for m, c in self.items():
            t = c
            for zk, e in zip(z, m):
                if e:
                    t = t * zk ** e
            total += t
        return total

    def eval_many(self, Z: np.ndarray) -> np.ndarray:
        """Evaluate at the rows of ``Z`` (shape (points, arity))."""
        Z = np.asarray(Z, dtype=complex)
        if Z.shape[-1] != self.arity:
            raise ArityError(f"points of width {Z.shape[-1]} for arity {self.arity}")
        total = np.zeros(Z.shape[:-1], dtype=complex)
        for m, c in self.items():
            t = np.full(Z.shape[:-1], c, dtype=complex)
            for k, e in enumerate(m):
                if e:
                    t = t * Z[..., k] ** e
            total = total + t
        return total

    # comparison
    def approx_eq(self, other: "Poly", tol: Tolerance = DEFAULT_TOL) -> bool:
        other = self._coerce(other)
        for m in set(self._terms) | set(other._terms):
            if not approx_eq(self.coeff(m), other.coeff(m), tol):
                return False
        return True


def _check_axis(k, arity):
    if not (isinstance(k, int) and 1 <= k <= arity):
        raise AxisError(f"axis {k} out of range 1..{arity}")


def direction_poly(alpha, beta, i: int, j: int, arity: int) -> Poly:
    """The characteristic coordinate w = z_j - (beta/alpha) z_i."""
    alpha = as_cx(alpha)
    if alpha == 0:
        raise ValidationError("alpha must be nonzero", "α ≠ 0")
    if i == j:
        raise AxisError("i and j must differ")
    _check_axis(i, arity)
    _check_axis(j, arity)
    return Poly.variable(arity, j) - Poly.variable(arity, i) * (as_cx(beta) / alpha)


def direction_decompose(p: Poly, alpha, beta, i: int, j: int,
                        tol: Tolerance = DEFAULT_TOL) -> Poly | None:
    """Find psi with p(z) = psi(z_j - (beta/alpha) z_i), or None.

    psi is read off the restriction z_i = 0, z_j = w and then checked by
    re-expansion, so the answer is decided within ``tol``.
    """
    w = direction_poly(alpha, beta, i, j, p.arity)
    if p.variables() - {i, j}:
        return None
    psi_terms = {}
    for m, c in p.items():
        if m[i - 1] == 0:
            psi_terms[(m[j - 1],)] = c
    psi = Poly(1, psi_terms)
    if psi.compose_univariate(w).approx_eq(p, tol):
        return psi
    return None
