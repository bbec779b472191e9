"""The quadratic trinomial PDDE and its residual checks.

    a D(f)^2 + 2 omega D(f) S(f) + b S(f)^2 = exp(g),

with D = alpha d/dz_i + beta d/dz_j and S(f) either the shift f(z + c) or the
difference f(z + c) - f(z).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    Poly,
    Tolerance,
    approx_eq,
    as_cx,
    csqrt,
)
from .errors import ArityError, AxisError, ValidationError
from .exppoly import ExpPoly


class Variant(enum.Enum):
    SHIFT = "shift"
    DIFFERENCE = "difference"


class Branch(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    def other(self):
        return Branch.MINUS if self is Branch.PLUS else Branch.PLUS


@dataclass(frozen=True)
class OmegaPair:
    omega1: complex
    omega2: complex
    branch: Branch


def sqrt_ab(a, b) -> complex:
    """The root of ab used everywhere: csqrt(a) * csqrt(b).

    Using the same two principal roots as the solution formulas keeps the
    splitting (sqrt(a)F - w1 sqrt(b)G)(sqrt(a)F - w2 sqrt(b)G) exact.
    """
    return csqrt(a) * csqrt(b)


def omega_roots(a, b, omega, branch: Branch = Branch.PLUS,
                tol: Tolerance = DEFAULT_TOL) -> OmegaPair:
    """Roots w1, w2 of the trinomial split; w1 * w2 = 1, sqrt(ab)(w1 + w2) = -2 omega."""
    a, b, omega = as_cx(a), as_cx(b), as_cx(omega)
    if a == 0 or b == 0:
        raise ValidationError("a and b must be nonzero", "a, b ≠ 0")
    if approx_eq(omega * omega, a * b, tol):
        raise ValidationError("degenerate trinomial: omega^2 = ab", "ω² ≠ ab")
    s = sqrt_ab(a, b)
    r = csqrt(omega * omega - a * b)
    w_plus, w_minus = (-omega + r) / s, (-omega - r) / s
    if branch is Branch.PLUS:
        return OmegaPair(w_plus, w_minus, branch)
    return OmegaPair(w_minus, w_plus, branch)


@dataclass(frozen=True)
class TrinomialPDDE:
    n: int
    i: int
    j: int
    a: complex
    b: complex
    omega: complex
    alpha: complex
    beta: complex
    c: tuple
    g: Poly
    variant: Variant = Variant.SHIFT
    tol: Tolerance = DEFAULT_TOL

    def __post_init__(self):
        for name in ("a", "b", "omega", "alpha", "beta"):
            object.__setattr__(self, name, as_cx(getattr(self, name)))
        object.__setattr__(self, "c", tuple(as_cx(x) for x in self.c))
        if self.n < 2:
            raise ValidationError("n must be at least 2", "n ≥ 2")
        if not (1 <= self.i < self.j <= self.n):
            raise AxisError(f"need 1 ≤ i < j ≤ n, got i={self.i}, j={self.j}, n={self.n}")
        if len(self.c) != self.n:
            raise ArityError(f"c has {len(self.c)} components, expected {self.n}")
        if self.g.arity != self.n:
            raise ArityError(f"g has arity {self.g.arity}, expected {self.n}")
        if self.a == 0:
            raise ValidationError("a must be nonzero", "a ≠ 0")
        if self.b == 0:
            raise ValidationError("b must be nonzero", "b ≠ 0")
        if self.alpha == 0:
            raise ValidationError("alpha must be nonzero", "α ≠ 0")
        if approx_eq(self.omega ** 2, self.a * self.b, self.tol):
            raise ValidationError("omega^2 equals ab", "ω² ≠ ab")
        if all(x == 0 for x in self.c):
            raise ValidationError("shift vector c is zero", "c ∈ Cⁿ∖{0}")

    # handy derived quantities
    def omegas(self, branch: Branch = Branch.PLUS) -> OmegaPair:
        return omega_roots(self.a, self.b, self.omega, branch, self.tol)

    def D(self, f: ExpPoly) -> ExpPoly:
        return f.directional(self.alpha, self.beta, self.i, self.j)

    def S(self, f: ExpPoly) -> ExpPoly:
        if self.variant is Variant.SHIFT:
            return f.translate(self.c)
        return f.delta(self.c)

    def direction_vector(self) -> np.ndarray:
        v = np.zeros(self.n, dtype=complex)
        v[self.i - 1] = self.alpha
        v[self.j - 1] = self.beta
        return v

    @property
    def tau(self) -> complex:
        """Period c_j - (beta/alpha) c_i of the characteristic coordinate."""
        return self.c[self.j - 1] - self.beta / self.alpha * self.c[self.i - 1]


def _check_arity(eq: TrinomialPDDE, f: ExpPoly):
    if f.arity != eq.n:
        raise ArityError(f"candidate has arity {f.arity}, equation has n={eq.n}")


def lhs_apply(eq: TrinomialPDDE, f: ExpPoly) -> ExpPoly:
    _check_arity(eq, f)
    d, s = eq.D(f), eq.S(f)
    return d * d * eq.a + d * s * (2 * eq.omega) + s * s * eq.b


def residual(eq: TrinomialPDDE, f: ExpPoly) -> ExpPoly:
    return lhs_apply(eq, f) - ExpPoly.exp(eq.g)


def verify_symbolic(eq: TrinomialPDDE, f: ExpPoly, tol: Tolerance | None = None) -> bool:
    return residual(eq, f).is_zero(tol or eq.tol)


@dataclass
class VerificationReport:
    symbolic_zero: bool | None
    numeric_max_rel_residual: float
    samples: int
    seed: int
    tol: float = 1e-8
    overflow_excluded: int = 0
    worst_point: tuple | None = field(default=None, repr=False)

    @property
    def numeric_pass(self) -> bool:
        return self.samples > self.overflow_excluded and self.numeric_max_rel_residual < self.tol

    @property
    def passed(self) -> bool:
        return (self.symbolic_zero is not False) and self.numeric_pass

    def as_dict(self) -> dict:
        return {
            "symbolic_zero": self.symbolic_zero,
            "max_rel_residual": self.numeric_max_rel_residual,
            "samples": self.samples,
            "seed": self.seed,
        }


def sample_points(n: int, samples: int, seed: int) -> np.ndarray:
    """Points with Re and Im of each coordinate uniform in [-1, 1]."""
    rng = np.random.default_rng(seed)
    re = rng.uniform(-1.0, 1.0, size=(samples, n))
    im = rng.uniform(-1.0, 1.0, size=(samples, n))
    return re + 1j * im


# Contour used for D f: trapezoidal Cauchy integral on |t| = radius.
_CONTOUR_NODES = 64
_CONTOUR_REACH = 0.25


def directional_derivative_numeric(f: ExpPoly, Z: np.ndarray, v: np.ndarray) -> np.ndarray:
    """d/dt f(z + t v) at t = 0 from values of f only.

    f is entire, so the trapezoidal rule for (1/2 pi i) ∮ f(z+tv)/t^2 dt
    converges geometrically; this stays independent of the symbolic D.
    """
    radius = _CONTOUR_REACH / max(1.0, float(np.max(np.abs(v))))
    theta = 2 * np.pi * np.arange(_CONTOUR_NODES) / _CONTOUR_NODES
    t = radius * np.exp(1j * theta)
    pts = Z[:, None, :] + t[None, :, None] * v[None, None, :]
    vals = f.eval_many(pts)
    return np.mean(vals / t[None, :], axis=1)


def numeric_residual(eq: TrinomialPDDE, f: ExpPoly, Z: np.ndarray):
    """|lhs - e^g| / (1 + |e^g|) at the rows of Z, from point values of f."""
    _check_arity(eq, f)
    Z = np.asarray(Z, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        df = directional_derivative_numeric(f, Z, eq.direction_vector())
        shifted = f.eval_many(Z + np.asarray(eq.c)[None, :])
        if eq.variant is Variant.DIFFERENCE:
            shifted = shifted - f.eval_many(Z)
        lhs = eq.a * df * df + 2 * eq.omega * df * shifted + eq.b * shifted * shifted
        eg = np.exp(eq.g.eval_many(Z))
        rel = np.abs(lhs - eg) / (1 + np.abs(eg))
    return rel


def verify_numeric(eq: TrinomialPDDE, f: ExpPoly, samples: int = 100, seed: int = 0,
                   tol: float = 1e-8) -> VerificationReport:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    Z = sample_points(eq.n, samples, seed)
    rel = numeric_residual(eq, f, Z)
    finite = np.isfinite(rel)
    excluded = int(np.count_nonzero(~finite))
    if excluded == samples:
        worst, value = None, float("inf")
    else:
        idx = int(np.argmax(np.where(finite, rel, -1.0)))
        worst, value = tuple(Z[idx]), float(rel[idx])
    return VerificationReport(None, value, samples, seed, tol, excluded, worst)


def verify(eq: TrinomialPDDE, f: ExpPoly, samples: int = 100, seed: int = 0,
           tol: float = 1e-8, symbolic_tol: Tolerance | None = None) -> VerificationReport:
    """Symbolic zero test plus the seeded numeric residual in one report."""
    report = verify_numeric(eq, f, samples, seed, tol)
    report.symbolic_zero = verify_symbolic(eq, f, symbolic_tol)
    return report


def factorization_check(a, b, omega, F: ExpPoly, G: ExpPoly,
                        branch: Branch = Branch.PLUS, tol: Tolerance = DEFAULT_TOL,
                        pair: OmegaPair | None = None) -> bool:
    """aF^2 + 2 omega F G + bG^2 == (sqrt(a)F - w1 sqrt(b)G)(sqrt(a)F - w2 sqrt(b)G).

    ``pair`` overrides the computed roots (used to probe wrong pairs).
    """
    p = pair or omega_roots(a, b, omega, branch, tol)
    ra, rb = csqrt(a), csqrt(b)
    lhs = F * F * a + F * G * (2 * omega) + G * G * b
    rhs = (F * ra - G * (p.omega1 * rb)) * (F * ra - G * (p.omega2 * rb))
    return (lhs - rhs).is_zero(tol)


def m_constants(a, b, omega, xi, branch: Branch = Branch.PLUS):
    """M1, M2 of the constant-p case for a given xi = e^p."""
    p = omega_roots(a, b, omega, branch)
    d = p.omega2 - p.omega1
    m1 = (p.omega2 * xi - p.omega1 / xi) / (csqrt(a) * d)
    m2 = (xi - 1 / xi) / (csqrt(b) * d)
    return m1, m2
