"""Solution constructors, constraint solvers and constraint reports.

Theorem tags are "2.1" (shift variant) and "2.2" (difference variant); case
tags are the roman numerals "i" .. "iv".  Every constructor returns an
ExpPoly; nothing here decides whether the constraints hold beyond reporting
them, the residual checks in :mod:`trinomial_pdde.equation` do that.

Notation (n variables, 1-based axes i < j):
    D = alpha d_i + beta d_j,   w = z_j - (beta/alpha) z_i,
    tau = c_j - (beta/alpha) c_i,   lambda(L) = alpha L_i + beta L_j.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

from .algebra import (
    DEFAULT_TOL,
    Poly,
    Tolerance,
    approx_eq,
    as_cx,
    clog,
    csqrt,
    direction_decompose,
    direction_poly,
    format_cx,
)
from .equation import Branch, TrinomialPDDE, Variant
from .errors import (
    NoSolutionError,
    NonElementaryError,
    ValidationError,
    ZeroDenominatorError,
)
from .exppoly import ExpPoly

THEOREMS = ("2.1", "2.2")
CASES = {"2.1": ("i", "ii", "iii"), "2.2": ("i", "ii", "iii", "iv")}
TWO_PI_I = 2j * math.pi


def check_case(theorem: str, case: str):
    if theorem not in CASES:
        raise ValidationError(f"unknown theorem {theorem!r}; expected 2.1 or 2.2")
    if case not in CASES[theorem]:
        raise ValidationError(f"theorem {theorem} has no case {case!r}")


# ---------------------------------------------------------------- components

@dataclass(frozen=True)
class UnivariateComponent:
    """A function of w alone, either a general ExpPoly in w or a Fourier sum.

    ``expoly`` has arity 1 (its variable stands for w).  A Fourier component
    is sum coeff * exp(2 pi i k w / period).
    """
    kind: str  # "expoly" | "fourier"
    expoly: ExpPoly | None = None
    period: complex | None = None
    fourier: tuple = ()

    @classmethod
    def from_expoly(cls, f: ExpPoly) -> "UnivariateComponent":
        if f.arity != 1:
            raise ValidationError("a component in w must have arity 1")
        return cls("expoly", expoly=f)

    @classmethod
    def periodic(cls, period, fourier) -> "UnivariateComponent":
        period = as_cx(period)
        if period == 0:
            raise ZeroDenominatorError("period tau is zero", "cⱼ − (β/α)cᵢ ≠ 0")
        return cls("fourier", period=period,
                   fourier=tuple((int(k), as_cx(a)) for k, a in fourier))

    def in_w(self) -> ExpPoly:
        """The component as an arity-1 ExpPoly in w."""
        if self.kind == "expoly":
            return self.expoly
        w = Poly.variable(1, 1)
        out = ExpPoly.zero(1)
        for k, coeff in self.fourier:
            out = out + ExpPoly.exp(w * (TWO_PI_I * k / self.period)) * coeff
        return out

    def embed(self, alpha, beta, i: int, j: int, n: int) -> ExpPoly:
        return self.in_w().compose_linear(direction_poly(alpha, beta, i, j, n))

    def is_periodic(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        """component(w + period) == component(w); only meaningful for Fourier sums."""
        if self.kind != "fourier":
            return False
        f = self.in_w()
        return f.translate([self.period]).approx_eq(f, tol)


def build_periodic(tau, fourier, alpha, beta, i: int, j: int, n: int) -> ExpPoly:
    """sum coeff * exp(2 pi i k w / tau) as an n-variable ExpPoly."""
    return UnivariateComponent.periodic(tau, fourier).embed(alpha, beta, i, j, n)


# ---------------------------------------------------------------- parameters

@dataclass(frozen=True)
class CaseParameters:
    """Everything a theorem case needs besides the equation itself.

    Linear forms are coefficient tuples of length n.  H, H1, H2 are
    ascending coefficient tuples of a polynomial in s = d . z.  For case
    2.2(iii) the linear form k is stored in ``L``.
    """
    theorem: str
    case: str
    branch: Branch = Branch.PLUS
    sign: int = 1
    L: tuple | None = None
    L1: tuple | None = None
    L2: tuple | None = None
    d: tuple | None = None
    H: tuple | None = None
    H1: tuple | None = None
    H2: tuple | None = None
    B1: complex | None = None
    E1: complex | None = None
    E2: complex | None = None
    R: complex | None = None
    R2: complex | None = None
    R3: complex | None = None
    R4: complex | None = None
    xi: complex | None = None
    phi: UnivariateComponent | None = None
    periodic: tuple = ()

    def __post_init__(self):
        check_case(self.theorem, self.case)
        if self.sign not in (1, -1):
            raise ValidationError("sign must be +1 or -1")
        if self.xi is not None and as_cx(self.xi) == 0:
            raise ValidationError("xi must be nonzero", "ξ ≠ 0")
        object.__setattr__(self, "periodic", tuple(self.periodic))

    def require(self, *names):
        missing = [k for k in names if getattr(self, k) is None]
        if missing:
            raise ValidationError(
                f"case {self.theorem}({self.case}) needs parameter(s): {', '.join(missing)}")

    def with_(self, **kw) -> "CaseParameters":
        return replace(self, **kw)


@dataclass
class SolutionCandidate:
    f: ExpPoly
    params: CaseParameters
    equation: TrinomialPDDE


@dataclass
class ConstraintEntry:
    constraint_id: str
    lhs: complex
    rhs: complex
    satisfied: bool
    abs_err: float
    gating: bool = True
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "id": self.constraint_id,
            "lhs": format_cx(self.lhs),
            "rhs": format_cx(self.rhs),
            "satisfied": self.satisfied,
            "abs_err": self.abs_err,
            "gating": self.gating,
        }


@dataclass
class ConstraintReport:
    entries: list = field(default_factory=list)

    def add(self, cid, lhs, rhs, tol: Tolerance, gating=True, note=""):
        lhs, rhs = complex(lhs), complex(rhs)
        finite = cmath.isfinite(lhs) and cmath.isfinite(rhs)
        ok = finite and approx_eq(lhs, rhs, tol)
        err = abs(lhs - rhs) if finite else math.inf
        self.entries.append(ConstraintEntry(cid, lhs, rhs, ok, err, gating, note))

    def add_zero(self, cid, f: ExpPoly, tol: Tolerance, gating=True, note=""):
        # identity rows: lhs is the relative defect of f, which must be 0
        self.add(cid, f.defect(tol), 0, tol, gating, note)

    @property
    def satisfied(self) -> bool:
        return all(e.satisfied for e in self.entries if e.gating)

    def __getitem__(self, cid) -> ConstraintEntry:
        for e in self.entries:
            if e.constraint_id == cid:
                return e
        raise KeyError(cid)

    def as_list(self) -> list:
        return [e.as_dict() for e in self.entries]

    def format(self) -> str:
        lines = []
        for e in self.entries:
            mark = "ok  " if e.satisfied else "FAIL"
            tag = "" if e.gating else " (informational)"
            lines.append(f"  [{mark}] {e.constraint_id}: lhs={format_cx(e.lhs)} "
                         f"rhs={format_cx(e.rhs)} |err|={e.abs_err:.3e}{tag}")
        return "\n".join(lines)


# ---------------------------------------------------------------- helpers

def _vec(eq: TrinomialPDDE, v, name) -> tuple:
    v = tuple(as_cx(x) for x in v)
    if len(v) != eq.n:
        raise ValidationError(f"{name} has {len(v)} components, expected {eq.n}")
    return v


def _dot(u, v) -> complex:
    return sum(x * y for x, y in zip(u, v))


def lam(eq: TrinomialPDDE, v) -> complex:
    """alpha v_i + beta v_j: the D-derivative of the linear form v . z."""
    return eq.alpha * v[eq.i - 1] + eq.beta * v[eq.j - 1]


def _lin(eq, v, name="L") -> Poly:
    return Poly.linear(list(_vec(eq, v, name)))


def _H_poly(eq: TrinomialPDDE, coeffs, d) -> Poly:
    if coeffs is None or all(as_cx(x) == 0 for x in coeffs):
        return Poly.zero(eq.n)
    if d is None:
        raise ValidationError("an H component needs the direction vector d")
    return Poly.univariate_in([as_cx(x) for x in coeffs], _lin(eq, d, "d"))


def _has_H(params: CaseParameters) -> bool:
    return any(h is not None and any(as_cx(x) != 0 for x in h)
               for h in (params.H, params.H1, params.H2))


def _D_const(eq: TrinomialPDDE, p: Poly) -> complex | None:
    """D p when it is a constant (within tolerance), else None."""
    dp = p.directional(eq.alpha, eq.beta, eq.i, eq.j)
    rest = dp.without_constant()
    if rest.max_abs() <= eq.tol.bound(dp.max_abs()):
        return dp.constant_term
    return None


def _nonconst_defect(eq, p: Poly) -> float:
    return p.without_constant().max_abs() / max(1.0, p.max_abs())


def _nonzero(x, what, hypothesis=None):
    if abs(x) <= DEFAULT_TOL.abs_tol:
        raise ZeroDenominatorError(f"zero denominator: {what}", hypothesis or f"{what} ≠ 0")
    return x


def _check_variant(eq: TrinomialPDDE, theorem: str):
    want = Variant.SHIFT if theorem == "2.1" else Variant.DIFFERENCE
    if eq.variant is not want:
        raise ValidationError(
            f"theorem {theorem} concerns the {want.value} variant, equation is {eq.variant.value}")


def _check_d(eq: TrinomialPDDE, params: CaseParameters):
    if not _has_H(params):
        return
    d = _vec(eq, params.d, "d") if params.d is not None else None
    if d is None:
        raise ValidationError("an H component needs the direction vector d")
    if not approx_eq(_dot(d, eq.c), 0, eq.tol):
        raise ValidationError("d·c ≠ 0", "d₁c₁ + ⋯ + dₙcₙ = 0")
    if params.theorem == "2.2" and approx_eq(lam(eq, d), 0, eq.tol):
        raise ValidationError("αdᵢ + βdⱼ = 0", "αdᵢ + βdⱼ ≠ 0")


def n1_constant(eq: TrinomialPDDE, branch: Branch = Branch.PLUS, sign: int = 1) -> complex:
    """N1: the radicand from the constant-F sub-case, taken with the given sign.

    Algebraically the radicand reduces to 1/b; it is evaluated as written so
    the reduction is checked rather than assumed.
    """
    p = eq.omegas(branch)
    w1, w2, a, b = p.omega1, p.omega2, eq.a, eq.b
    num = ((b * w2 ** 2 + a) * w1 ** 2 - 2 * (w1 * w2 * b + a) * w1 * w2
           + (b * w1 ** 2 + a) * w2 ** 2)
    den = a * b * w1 * w2 * (w2 - w1) ** 2
    return sign * csqrt(num / den)


def kernel_form(eq: TrinomialPDDE) -> tuple:
    """Coefficients of a linear form l with D l = 0 and l(c) != 0.

    Prefers w itself (l(c) = tau); otherwise some z_k with k outside {i, j}.
    """
    if not approx_eq(eq.tau, 0, eq.tol):
        return tuple(direction_poly(eq.alpha, eq.beta, eq.i, eq.j, eq.n).linear_part())
    for k in range(eq.n):
        if k + 1 not in (eq.i, eq.j) and eq.c[k] != 0:
            v = [0j] * eq.n
            v[k] = 1 + 0j
            return tuple(v)
    raise NoSolutionError("no D-invariant linear form separates c (c is parallel to D)")


def fit_linear(eq: TrinomialPDDE, hint, lam_target, value_target) -> tuple:
    """Adjust ``hint`` to a linear form L with lambda(L) and L(c) prescribed.

    First z_i/alpha fixes lambda, then a D-invariant form fixes L(c).
    """
    v = list(_vec(eq, hint, "hint"))
    v[eq.i - 1] += (as_cx(lam_target) - lam(eq, v)) / eq.alpha
    ell = kernel_form(eq)
    t = (as_cx(value_target) - _dot(v, eq.c)) / _dot(ell, eq.c)
    return tuple(x + t * e for x, e in zip(v, ell))


def _periodic_sum(eq: TrinomialPDDE, params: CaseParameters) -> ExpPoly:
    out = ExpPoly.zero(eq.n)
    for comp in params.periodic:
        out = out + comp.embed(eq.alpha, eq.beta, eq.i, eq.j, eq.n)
    return out


def _split_poly(eq, params: CaseParameters) -> Poly | None:
    """The declared decomposition of g for the case, when one applies."""
    t, c = params.theorem, params.case
    if (t, c) == ("2.1", "ii"):
        return (_lin(eq, params.L) + _H_poly(eq, params.H, params.d)
                + (params.B1 if params.B1 is not None else eq.g.constant_term))
    if (t, c) == ("2.1", "iii"):
        return (_lin(eq, params.L1) + _lin(eq, params.L2)
                + _H_poly(eq, params.H1, params.d) + _H_poly(eq, params.H2, params.d)
                + as_cx(params.E1) + as_cx(params.E2))
    if (t, c) == ("2.2", "ii") and params.L is not None:
        return (_lin(eq, params.L) + _H_poly(eq, params.H, params.d)
                + (params.R if params.R is not None else eq.g.constant_term))
    if (t, c) == ("2.2", "iii"):
        return _lin(eq, params.L) + (params.R2 if params.R2 is not None else eq.g.constant_term)
    if (t, c) == ("2.2", "iv"):
        return _lin(eq, params.L1) + _lin(eq, params.L2) + as_cx(params.R3) + as_cx(params.R4)
    return None


def _check_split(eq, params):
    split = _split_poly(eq, params)
    if split is not None and not split.approx_eq(eq.g, eq.tol):
        raise ValidationError("the declared split of g does not add up to g",
                              "g = sum of the case's components")


# ---------------------------------------------------------------- assembly

def _t21_i(eq, params):
    psi = direction_decompose(eq.g, eq.alpha, eq.beta, eq.i, eq.j, eq.tol)
    if psi is None:
        raise ValidationError("g is not a function of w = z_j - (β/α) z_i",
                              "g = ψ(zⱼ − (β/α)zᵢ)")
    n1 = n1_constant(eq, params.branch, params.sign)
    return ExpPoly.exp(eq.g.translate([-x for x in eq.c]) * 0.5) * n1


def _t21_ii(eq, params):
    params.require("L", "xi")
    p = eq.omegas(params.branch)
    xi = as_cx(params.xi)
    L = _vec(eq, params.L, "L")
    den = _nonzero(xi * csqrt(eq.b) * (p.omega2 - p.omega1), "ξ√b(ω₂−ω₁)")
    coeff = (xi * xi - 1) / den
    return ExpPoly.exp((eq.g - _dot(L, eq.c)) * 0.5) * coeff


def _t21_iii(eq, params):
    params.require("L1", "L2", "E1", "E2")
    p = eq.omegas(params.branch)
    L1, L2 = _vec(eq, params.L1, "L1"), _vec(eq, params.L2, "L2")
    k1 = _lin(eq, L1) + _H_poly(eq, params.H1, params.d)
    k2 = _lin(eq, L2) + _H_poly(eq, params.H2, params.d)
    if k1.approx_eq(k2, eq.tol):
        raise ValidationError("L1 + H1 equals L2 + H2", "L₁(z)+H₁(s) ≠ L₂(z)+H₂(s)")
    h1 = k1 + as_cx(params.E1) - _dot(L1, eq.c)
    h2 = k2 + as_cx(params.E2) - _dot(L2, eq.c)
    den = _nonzero(csqrt(eq.b) * (p.omega2 - p.omega1), "√b(ω₂−ω₁)")
    return (ExpPoly.exp(h1) - ExpPoly.exp(h2)) / den


def _t22_i_phi(eq, params) -> ExpPoly:
    """phi(w) solving phi(w + tau) - phi(w) = N1 e^{g/2}, for psi of degree <= 1."""
    if params.phi is not None:
        return params.phi.embed(eq.alpha, eq.beta, eq.i, eq.j, eq.n)
    psi = direction_decompose(eq.g, eq.alpha, eq.beta, eq.i, eq.j, eq.tol)
    if psi is None:
        raise ValidationError("g is not a function of w = z_j - (β/α) z_i",
                              "g = ψ(zⱼ − (β/α)zᵢ)")
    if psi.degree >= 2:
        raise NonElementaryError(
            "the difference equation for phi has no exponential-polynomial solution "
            "when deg ψ ≥ 2; supply phi explicitly")
    mu, nu = psi.coeff((1,)), psi.constant_term
    n1 = n1_constant(eq, params.branch, params.sign)
    tau = eq.tau
    wz = direction_poly(eq.alpha, eq.beta, eq.i, eq.j, eq.n)
    base = ExpPoly.exp(wz * (mu / 2)) * (n1 * cmath.exp(nu / 2))
    r = cmath.exp(mu * tau / 2)
    if approx_eq(r, 1, eq.tol):
        # resonant: e^{mu tau/2} = 1, use the secular solution w e^{mu w/2}/tau
        _nonzero(tau, "τ = cⱼ − (β/α)cᵢ")
        return base * wz * (1 / tau)
    return base * (1 / (r - 1))


def _t22_i(eq, params):
    return _t22_i_phi(eq, params)


def secular_factor(eq: TrinomialPDDE) -> Poly:
    """u with D u = 1 and u(z + c) = u(z): z_i/alpha corrected by a D-invariant form."""
    u = Poly.variable(eq.n, eq.i) * (1 / eq.alpha)
    ci = eq.c[eq.i - 1]
    if ci == 0:
        return u
    ell = kernel_form(eq)
    return u - Poly.linear(list(ell)) * ((ci / eq.alpha) / _dot(ell, eq.c))


def _t22_ii(eq, params):
    kappa = _D_const(eq, eq.g * 0.5)
    if kappa is None:
        raise NonElementaryError(
            "D(g/2) is not constant: the characteristic integral leaves the "
            "exponential-polynomial class")
    ra = csqrt(eq.a)
    half = ExpPoly.exp(eq.g * 0.5)
    if approx_eq(kappa, 0, eq.tol):
        return half * secular_factor(eq) * (params.sign / ra)
    return half * (params.sign / (ra * kappa))


def _t22_iii(eq, params):
    params.require("L", "xi")
    p = eq.omegas(params.branch)
    xi = as_cx(params.xi)
    lk = lam(eq, _vec(eq, params.L, "k"))
    _nonzero(lk, "kᵢα + kⱼβ")
    den = _nonzero(xi * csqrt(eq.a) * (p.omega2 - p.omega1) * lk, "ξ√a(ω₂−ω₁)(kᵢα+kⱼβ)")
    coeff = 2 * (p.omega2 * xi * xi - p.omega1) / den
    return ExpPoly.exp(eq.g * 0.5) * coeff


def _t22_iv(eq, params):
    params.require("L1", "L2", "R3", "R4")
    p = eq.omegas(params.branch)
    L1, L2 = _vec(eq, params.L1, "L1"), _vec(eq, params.L2, "L2")
    l1 = _nonzero(lam(eq, L1), "αa₁ᵢ + βa₁ⱼ")
    l2 = _nonzero(lam(eq, L2), "αa₂ᵢ + βa₂ⱼ")
    if _lin(eq, L1).approx_eq(_lin(eq, L2), eq.tol):
        raise ValidationError("L1 equals L2", "L₁ ≠ L₂")
    e1 = ExpPoly.exp(_lin(eq, L1) + as_cx(params.R3)) * (p.omega2 / l1)
    e2 = ExpPoly.exp(_lin(eq, L2) + as_cx(params.R4)) * (p.omega1 / l2)
    den = _nonzero(csqrt(eq.a) * (p.omega2 - p.omega1), "√a(ω₂−ω₁)")
    return (e1 - e2) / den


_BUILDERS = {
    ("2.1", "i"): _t21_i,
    ("2.1", "ii"): _t21_ii,
    ("2.1", "iii"): _t21_iii,
    ("2.2", "i"): _t22_i,
    ("2.2", "ii"): _t22_ii,
    ("2.2", "iii"): _t22_iii,
    ("2.2", "iv"): _t22_iv,
}


def assemble(eq: TrinomialPDDE, params: CaseParameters) -> ExpPoly:
    """The candidate f for the case, validated but without a constraint report."""
    _check_variant(eq, params.theorem)
    if params.periodic and params.theorem == "2.1":
        raise ValidationError("periodic components only apply to the difference variant")
    _check_d(eq, params)
    _check_split(eq, params)
    f = _BUILDERS[(params.theorem, params.case)](eq, params)
    if params.periodic:
        f = f + _periodic_sum(eq, params)
    return f


def construct(eq: TrinomialPDDE, params: CaseParameters):
    """Build the candidate and evaluate its constraints: (SolutionCandidate, ConstraintReport)."""
    f = assemble(eq, params)
    return SolutionCandidate(f, params, eq), check_constraints(eq, params, f)


# ---------------------------------------------------------------- constraints

def _xi_constraint_lhs(eq, lam_value, xi, branch) -> complex:
    """sqrt(a)(xi^2 - 1) lambda / (2 sqrt(b)(w2 xi^2 - w1))."""
    p = eq.omegas(branch)
    A = csqrt(eq.a) * lam_value / (2 * csqrt(eq.b))
    den = p.omega2 * xi * xi - p.omega1
    if den == 0:
        return complex(math.inf)
    return A * (xi * xi - 1) / den


def _rows_psi(eq, rep):
    psi = direction_decompose(eq.g, eq.alpha, eq.beta, eq.i, eq.j, eq.tol)
    dg = eq.g.directional(eq.alpha, eq.beta, eq.i, eq.j)
    rep.add("g is a function of w: D g = 0", dg.max_abs() / max(1.0, eq.g.max_abs()),
            0, eq.tol)
    other = [k for k in eq.g.variables() if k not in (eq.i, eq.j)]
    rep.add("g involves only z_i, z_j", float(len(other)), 0, eq.tol)
    return psi


def _rows_H(eq, params, rep):
    if not _has_H(params):
        return
    d = _vec(eq, params.d, "d") if params.d is not None else (0,) * eq.n
    rep.add("d·c = 0", _dot(d, eq.c), 0, eq.tol)
    for name in ("H", "H1", "H2"):
        coeffs = getattr(params, name)
        if coeffs is None:
            continue
        dh = _H_poly(eq, coeffs, params.d).directional(eq.alpha, eq.beta, eq.i, eq.j)
        rep.add(f"D {name}(s) is constant", _nonconst_defect(eq, dh), 0, eq.tol)


def _rows_split(eq, params, rep):
    split = _split_poly(eq, params)
    if split is not None:
        diff = split - eq.g
        rep.add("split adds up to g", diff.max_abs() / max(1.0, eq.g.max_abs()), 0, eq.tol)


def _rows_periodic(eq, params, rep):
    for idx, comp in enumerate(params.periodic):
        f = comp.embed(eq.alpha, eq.beta, eq.i, eq.j, eq.n)
        rep.add_zero(f"periodic[{idx}]: D-image = 0", eq.D(f), eq.tol)
        rep.add_zero(f"periodic[{idx}]: Δ_c-image = 0", f.delta(eq.c), eq.tol)


def _safe_D_const(eq, p: Poly):
    k = _D_const(eq, p)
    return k if k is not None else complex(math.nan)


def check_constraints(eq: TrinomialPDDE, params: CaseParameters,
                      f: ExpPoly | None = None) -> ConstraintReport:
    """Evaluate every constraint of the case as lhs/rhs numbers; never raises on failure."""
    check_case(params.theorem, params.case)
    rep = ConstraintReport()
    tol = eq.tol
    t, case = params.theorem, params.case
    p = eq.omegas(params.branch)
    ra, rb = csqrt(eq.a), csqrt(eq.b)
    _rows_split(eq, params, rep)
    _rows_H(eq, params, rep)

    if (t, case) == ("2.1", "i"):
        _rows_psi(eq, rep)
        n1 = n1_constant(eq, params.branch, params.sign)
        rep.add("b N1^2 = 1", eq.b * n1 * n1, 1, tol)

    elif (t, case) == ("2.1", "ii"):
        params.require("L", "xi")
        L = _vec(eq, params.L, "L")
        lam_g = _safe_D_const(eq, _lin(eq, L) + _H_poly(eq, params.H, params.d))
        rep.add("exp constraint: √a(ξ²−1)λ/(2√b(ω₂ξ²−ω₁)) = e^{L(c)/2}",
                _xi_constraint_lhs(eq, lam_g, as_cx(params.xi), params.branch),
                cmath.exp(_dot(L, eq.c) / 2), tol)

    elif (t, case) == ("2.1", "iii"):
        params.require("L1", "L2", "E1", "E2")
        L1, L2 = _vec(eq, params.L1, "L1"), _vec(eq, params.L2, "L2")
        l1 = _safe_D_const(eq, _lin(eq, L1) + _H_poly(eq, params.H1, params.d))
        l2 = _safe_D_const(eq, _lin(eq, L2) + _H_poly(eq, params.H2, params.d))
        rep.add("√aλ₁e^{−L₁(c)}/(ω₂√b) = 1",
                ra * l1 * cmath.exp(-_dot(L1, eq.c)) / (p.omega2 * rb), 1, tol)
        rep.add("√aλ₂e^{−L₂(c)}/(ω₁√b) = 1",
                ra * l2 * cmath.exp(-_dot(L2, eq.c)) / (p.omega1 * rb), 1, tol)

    elif (t, case) == ("2.2", "i"):
        _rows_psi(eq, rep)
        n1 = n1_constant(eq, params.branch, params.sign)
        try:
            phi = f if f is not None else assemble(eq, params)
        except (ValidationError, NonElementaryError, NoSolutionError) as exc:
            rep.add("φ(w+τ) − φ(w) = N₁e^{g(z)/2}", math.nan, 0, tol, note=str(exc))
        else:
            rep.add_zero("D φ = 0", eq.D(phi), tol)
            rep.add_zero("φ(w+τ) − φ(w) = N₁e^{g(z)/2}",
                         phi.delta(eq.c) - ExpPoly.exp(eq.g * 0.5) * n1, tol)
            rep.add_zero("φ(w+τ) − φ(w) = N₁e^{g(z−c)/2} (alternative form)",
                         phi.delta(eq.c)
                         - ExpPoly.exp(eq.g.translate([-x for x in eq.c]) * 0.5) * n1,
                         tol, gating=False)

    elif (t, case) == ("2.2", "ii"):
        kappa = _safe_D_const(eq, eq.g * 0.5)
        dg = eq.g.directional(eq.alpha, eq.beta, eq.i, eq.j)
        rep.add("D(g/2) is constant", _nonconst_defect(eq, dg), 0, tol)
        shift = eq.g.translate(eq.c) - eq.g
        rep.add("g(z+c) − g(z) is constant", _nonconst_defect(eq, shift), 0, tol)
        rep.add("e^{(g(z+c)−g(z))/2} = 1", cmath.exp(shift.constant_term / 2), 1, tol,
                note=f"kappa={format_cx(kappa)}")

    elif (t, case) == ("2.2", "iii"):
        params.require("L", "xi")
        k = _vec(eq, params.L, "k")
        rep.add("√a(ξ²−1)λ/(2√b(ω₂ξ²−ω₁)) + 1 = e^{k·c/2}",
                _xi_constraint_lhs(eq, lam(eq, k), as_cx(params.xi), params.branch) + 1,
                cmath.exp(_dot(k, eq.c) / 2), tol)

    elif (t, case) == ("2.2", "iv"):
        params.require("L1", "L2", "R3", "R4")
        L1, L2 = _vec(eq, params.L1, "L1"), _vec(eq, params.L2, "L2")
        l1, l2 = lam(eq, L1), lam(eq, L2)
        e1, e2 = cmath.exp(-_dot(L1, eq.c)), cmath.exp(-_dot(L2, eq.c))
        rep.add("(√aλ₁ + √bω₂)e^{−L₁(c)}/(ω₂√b) = 1",
                (ra * l1 + rb * p.omega2) * e1 / (p.omega2 * rb), 1, tol)
        rep.add("(√aλ₂ + √bω₁)e^{−L₂(c)}/(ω₁√b) = 1",
                (ra * l2 + rb * p.omega1) * e2 / (p.omega1 * rb), 1, tol)
        rep.add("(√a/(ω₂√b))(λ₁ + √aω₂)e^{−L₁(c)} = 1 (alternative form)",
                ra / (p.omega2 * rb) * (l1 + ra * p.omega2) * e1, 1, tol, gating=False)
        rep.add("(√a/(ω₁√b))(λ₂ + √bω₁)e^{−L₂(c)} = 1 (alternative form)",
                ra / (p.omega1 * rb) * (l2 + rb * p.omega1) * e2, 1, tol, gating=False)

    if params.theorem == "2.2":
        _rows_periodic(eq, params, rep)
    return rep


# ---------------------------------------------------------------- solvers

def solve_xi(eq: TrinomialPDDE, theorem: str, coeffs, branch: Branch = Branch.PLUS,
             lam_value=None) -> list:
    """Both roots xi of the exponential constraint of 2.1(ii) / 2.2(iii).

    With A = sqrt(a) lambda / (2 sqrt(b)) and E = e^{L(c)/2} (2.1) or
    e^{k.c/2} - 1 (2.2):  xi^2 = (A - E w1) / (A - E w2).  ``lam_value``
    overrides lambda(L) (used when an H component contributes to D g).
    """
    if theorem not in THEOREMS:
        raise ValidationError(f"unknown theorem {theorem!r}")
    v = _vec(eq, coeffs, "L")
    p = eq.omegas(branch)
    lv = lam(eq, v) if lam_value is None else as_cx(lam_value)
    A = csqrt(eq.a) * lv / (2 * csqrt(eq.b))
    E = cmath.exp(_dot(v, eq.c) / 2)
    if theorem == "2.2":
        E -= 1
    den = A - E * p.omega2
    if abs(den) <= eq.tol.bound(abs(A)):
        raise NoSolutionError("A = E·ω₂: the constraint has no solution in this family")
    xi2 = (A - E * p.omega1) / den
    if abs(xi2) <= eq.tol.abs_tol:
        raise NoSolutionError("the constraint forces ξ² = 0, but ξ ≠ 0 is required")
    r = csqrt(xi2)
    return [r, -r]


def solve_split(eq: TrinomialPDDE, theorem: str, L, hint_L1=None,
                branch: Branch = Branch.PLUS, log_branch: int = 0,
                lam_extra=(0, 0)) -> tuple:
    """Split the linear form L = L1 + L2 so that both exponential constraints hold.

    The constraints read u_l = p + A_l lambda_l with u_l = e^{L_l(c)}, where
    p = 0 (2.1(iii)) or 1 (2.2(iv)), A_1 = sqrt(a)/(w2 sqrt(b)) and
    A_2 = sqrt(a)/(w1 sqrt(b)).  Since u_1 u_2 = e^{L(c)} and
    lambda_1 + lambda_2 = lambda(L) is fixed, lambda_1 solves a quadratic;
    the root nearest the hint is used and L_1(c) takes the log branch
    ``log_branch``.  ``lam_extra`` adds constant D-images of H1, H2.
    """
    L = _vec(eq, L, "L")
    p = eq.omegas(branch)
    ra, rb = csqrt(eq.a), csqrt(eq.b)
    pc = 0 if theorem == "2.1" else 1
    A1, A2 = ra / (p.omega2 * rb), ra / (p.omega1 * rb)
    x1, x2 = (as_cx(x) for x in lam_extra)
    total = lam(eq, L) + x1 + x2
    E = cmath.exp(_dot(L, eq.c))
    # (pc + A1 y)(pc + A2 (total - y)) = E, y = full D-image of h1
    qa = -A1 * A2
    qb = A1 * (pc + A2 * total) - pc * A2
    qc = pc * (pc + A2 * total) - E
    disc = csqrt(qb * qb - 4 * qa * qc)
    roots = [(-qb + disc) / (2 * qa), (-qb - disc) / (2 * qa)]
    hint = _vec(eq, hint_L1, "hint") if hint_L1 is not None else tuple(x / 2 for x in L)
    target = lam(eq, hint) + x1
    y = min(roots, key=lambda r: abs(r - target))
    u1 = pc + A1 * y
    if abs(u1) <= eq.tol.abs_tol:
        raise NoSolutionError("split constraint forces e^{L₁(c)} = 0")
    value = clog(u1) + TWO_PI_I * log_branch
    L1 = fit_linear(eq, hint, y - x1, value)
    L2 = tuple(a - b for a, b in zip(L, L1))
    return L1, L2


def derive_params(eq: TrinomialPDDE, theorem: str, case: str,
                  branch: Branch = Branch.PLUS, sign: int = 1, xi_index: int = 0,
                  log_branch: int = 0, hint_L1=None, periodic=(),
                  base: CaseParameters | None = None) -> CaseParameters:
    """Fill in the parameters of a case from g alone.

    g must be linear for the split-based cases (2.1(ii)/(iii), 2.2(iii)/(iv));
    its linear part is L and its constant term the free constant.  ``base``
    supplies anything already known (H components, explicit xi, ...).
    """
    check_case(theorem, case)
    params = base or CaseParameters(theorem, case, branch=branch, sign=sign,
                                    periodic=tuple(periodic))
    g = eq.g
    L = tuple(g.linear_part())
    g0 = g.constant_term
    needs_linear = (theorem, case) in {("2.1", "ii"), ("2.1", "iii"),
                                       ("2.2", "iii"), ("2.2", "iv")}
    if needs_linear and not _has_H(params) and g.degree > 1:
        raise ValidationError("g must be linear (or an H component supplied) for this case")
    if (theorem, case) == ("2.1", "ii"):
        L = params.L or L
        H = _H_poly(eq, params.H, params.d)
        lam_g = _D_const(eq, _lin(eq, L) + H)
        if lam_g is None:
            raise NonElementaryError("D g is not constant")
        xi = params.xi
        if xi is None:
            xi = solve_xi(eq, "2.1", L, params.branch, lam_value=lam_g)[xi_index]
        B1 = params.B1 if params.B1 is not None else (g - _lin(eq, L) - H).constant_term
        return params.with_(L=L, xi=xi, B1=B1)
    if (theorem, case) == ("2.2", "iii"):
        L = params.L or L
        xi = params.xi
        if xi is None:
            xi = solve_xi(eq, "2.2", L, params.branch)[xi_index]
        R2 = params.R2 if params.R2 is not None else g0
        return params.with_(L=L, xi=xi, R2=R2)
    if (theorem, case) in {("2.1", "iii"), ("2.2", "iv")}:
        if params.L1 is not None and params.L2 is not None:
            if theorem == "2.1" and params.E1 is not None and params.E2 is None:
                return params.with_(E2=g0 - params.E1)
            if theorem == "2.2" and params.R3 is not None and params.R4 is None:
                return params.with_(R4=g0 - params.R3)
            return params
        extra = (0, 0)
        if _has_H(params):
            h1 = _D_const(eq, _H_poly(eq, params.H1, params.d))
            h2 = _D_const(eq, _H_poly(eq, params.H2, params.d))
            if h1 is None or h2 is None:
                raise NonElementaryError("D H1 or D H2 is not constant")
            extra = (h1, h2)
            rest = g - _H_poly(eq, params.H1, params.d) - _H_poly(eq, params.H2, params.d)
            L, g0 = tuple(rest.linear_part()), rest.constant_term
        L1, L2 = solve_split(eq, theorem, L, hint_L1 or params.L1, params.branch,
                             log_branch, extra)
        if theorem == "2.1":
            E1 = params.E1 if params.E1 is not None else g0 / 2
            return params.with_(L1=L1, L2=L2, E1=E1, E2=g0 - E1)
        R3 = params.R3 if params.R3 is not None else g0 / 2
        return params.with_(L1=L1, L2=L2, R3=R3, R4=g0 - R3)
    if (theorem, case) == ("2.2", "ii"):
        if params.L is None and not _has_H(params) and g.degree <= 1:
            return params.with_(L=L, R=g0)
        return params
    return params
