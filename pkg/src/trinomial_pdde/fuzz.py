"""Randomised constructor-soundness harness.

Each trial draws an admissible equation together with case parameters whose
constraints are enforced by solve_xi / solve_split / fit_linear, builds the
candidate and checks it symbolically and numerically.  Trial seeds come from
one master seed through numpy's SeedSequence, so any violation can be
replayed from (master seed, trial index).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import Poly, approx_eq, direction_poly
from .equation import Branch, TrinomialPDDE, Variant, verify_numeric, verify_symbolic
from .errors import NoSolutionError, TrinomialError
from .exppoly import ExpPoly
from .solutions import (
    CASES,
    CaseParameters,
    UnivariateComponent,
    assemble,
    construct,
    derive_params,
    fit_linear,
    lam,
)

ALL_CASES = [(t, c) for t in ("2.1", "2.2") for c in CASES[t]]
MAX_COEFF = 1e4  # draws whose candidate has larger coefficients are redrawn
MAX_SLOPE = 5.0  # nor steeper exponents: the polydisc residual would lose all digits


class Redraw(Exception):
    """The random draw was degenerate or ill-conditioned; try again."""


def _cx(rng, scale=1.0) -> complex:
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def _cvec(rng, n, scale=1.0) -> tuple:
    return tuple(_cx(rng, scale) for _ in range(n))


def _equation(rng, theorem, n, g: Poly | None = None, i=None, j=None, c=None) -> TrinomialPDDE:
    i, j = (i, j) if i else sorted(rng.choice(np.arange(1, n + 1), 2, replace=False).tolist())
    a, b, omega = _cx(rng, 2), _cx(rng, 2), _cx(rng, 3)
    alpha, beta = _cx(rng, 1.5), _cx(rng, 1.5)
    if min(abs(a), abs(b), abs(alpha)) < 0.2 or abs(omega ** 2 - a * b) < 0.2:
        raise Redraw("near-degenerate coefficients")
    c = c if c is not None else _cvec(rng, n)
    variant = Variant.SHIFT if theorem == "2.1" else Variant.DIFFERENCE
    return TrinomialPDDE(n, int(i), int(j), a, b, omega, alpha, beta, c,
                         g if g is not None else Poly.zero(n), variant)


def _with_g(eq: TrinomialPDDE, g: Poly) -> TrinomialPDDE:
    return TrinomialPDDE(eq.n, eq.i, eq.j, eq.a, eq.b, eq.omega, eq.alpha, eq.beta,
                         eq.c, g, eq.variant, eq.tol)


def _direction_d(rng, eq: TrinomialPDDE, want_D_zero: bool) -> tuple:
    """A vector d with d.c = 0 and alpha d_i + beta d_j zero (or not)."""
    n, i, j = eq.n, eq.i - 1, eq.j - 1
    d = np.array(_cvec(rng, n), dtype=complex)
    if want_D_zero:
        # solve alpha d_i + beta d_j = 0 and d.c = 0 for (d_i, d_j)
        rest = sum(d[k] * eq.c[k] for k in range(n) if k not in (i, j))
        M = np.array([[eq.alpha, eq.beta], [eq.c[i], eq.c[j]]])
        if abs(np.linalg.det(M)) < 0.1 or n < 3:
            raise Redraw("cannot place d")
        d[i], d[j] = np.linalg.solve(M, [0, -rest])
    else:
        e = np.conj(np.asarray(eq.c))
        d = d - (d @ np.asarray(eq.c)) / (e @ np.asarray(eq.c)) * e
        if abs(lam(eq, d)) < 0.1:
            raise Redraw("alpha d_i + beta d_j too small")
    if np.max(np.abs(d)) > 5:
        raise Redraw("d ill-conditioned")
    return tuple(complex(x) for x in d)


def _periodic(rng, eq: TrinomialPDDE) -> tuple:
    if abs(eq.tau) < 1.5 or rng.random() < 0.3:
        return ()
    terms = [(int(k), _cx(rng)) for k in rng.integers(-1, 2, size=rng.integers(1, 3))]
    return (UnivariateComponent.periodic(eq.tau, terms),)


def random_case(rng, theorem: str, case: str):
    """One admissible (equation, parameters) draw for the case."""
    n = int(rng.integers(2, 4))
    wants_H = theorem == "2.1" and case in ("ii", "iii") and n == 3 and rng.random() < 0.5
    wants_H = wants_H or (theorem == "2.2" and case == "ii" and n == 3 and rng.random() < 0.5)
    eq0 = _equation(rng, theorem, n)
    branch = Branch.PLUS if rng.random() < 0.5 else Branch.MINUS
    sign = 1 if rng.random() < 0.5 else -1
    periodic = _periodic(rng, eq0) if theorem == "2.2" else ()
    base = CaseParameters(theorem, case, branch=branch, sign=sign, periodic=periodic)
    w = direction_poly(eq0.alpha, eq0.beta, eq0.i, eq0.j, n)

    if case == "i":
        deg = 2 if theorem == "2.1" else 1
        psi = [_cx(rng) for _ in range(deg + 1)]
        if theorem == "2.2" and rng.random() < 0.3 and abs(eq0.tau) > 0.5:
            # resonant slope: e^{mu tau/2} = 1
            psi[1] = 4j * math.pi * int(rng.choice([-1, 1])) / eq0.tau
        g = Poly.univariate_in(psi, w)
        return _with_g(eq0, g), base

    L = _cvec(rng, n)
    g0 = _cx(rng)
    if theorem == "2.1" and case == "ii":
        H = Poly.zero(n)
        if wants_H:
            d = _direction_d(rng, eq0, True)
            hc = (0, _cx(rng), _cx(rng, 0.5))
            base = base.with_(d=d, H=hc)
            H = Poly.univariate_in(hc, Poly.linear(list(d)))
        eq = _with_g(eq0, Poly.linear(list(L)) + H + g0)
        return eq, derive_params(eq, theorem, case, xi_index=int(rng.integers(0, 2)),
                                 base=base.with_(L=L))
    if theorem == "2.1" and case == "iii":
        H = Poly.zero(n)
        if wants_H:
            d = _direction_d(rng, eq0, True)
            h1, h2 = (0, _cx(rng), _cx(rng, 0.5)), (0, _cx(rng), _cx(rng, 0.5))
            base = base.with_(d=d, H1=h1, H2=h2)
            s = Poly.linear(list(d))
            H = Poly.univariate_in(h1, s) + Poly.univariate_in(h2, s)
        eq = _with_g(eq0, Poly.linear(list(L)) + H + g0)
        return eq, derive_params(eq, theorem, case, log_branch=int(rng.integers(-1, 2)),
                                 hint_L1=_cvec(rng, n), base=base)
    if theorem == "2.2" and case == "ii":
        H = Poly.zero(n)
        dH = 0
        if wants_H:
            d = _direction_d(rng, eq0, False)
            hc = (0, _cx(rng))
            base = base.with_(d=d, H=hc)
            H = Poly.univariate_in(hc, Poly.linear(list(d)))
            dH = hc[1] * lam(eq0, d)
        lam_target = -dH if rng.random() < 0.3 else lam(eq0, L)
        L = fit_linear(eq0, L, lam_target, 4j * math.pi * int(rng.integers(-1, 2)))
        eq = _with_g(eq0, Poly.linear(list(L)) + H + g0)
        return eq, base.with_(L=L, R=g0)
    if theorem == "2.2" and case == "iii":
        eq = _with_g(eq0, Poly.linear(list(L)) + g0)
        return eq, derive_params(eq, theorem, case, xi_index=int(rng.integers(0, 2)),
                                 base=base)
    if theorem == "2.2" and case == "iv":
        eq = _with_g(eq0, Poly.linear(list(L)) + g0)
        return eq, derive_params(eq, theorem, case, log_branch=int(rng.integers(-1, 2)),
                                 hint_L1=_cvec(rng, n), base=base)
    raise ValueError(f"unknown case {theorem}({case})")


def draw_candidate(rng, theorem: str, case: str, max_tries: int = 200):
    """Draw until an admissible, well-conditioned candidate comes out."""
    for _ in range(max_tries):
        try:
            eq, params = random_case(rng, theorem, case)
            cand, report = construct(eq, params)
        except (Redraw, NoSolutionError, TrinomialError, ZeroDivisionError, OverflowError):
            continue
        if cand.f.is_empty() or cand.f.max_abs() > MAX_COEFF or slope(cand.f) > MAX_SLOPE:
            continue
        return cand, report
    raise RuntimeError(f"no admissible draw for {theorem}({case}) in {max_tries} tries")


def slope(f: ExpPoly) -> float:
    """Largest l1-norm of an exponent's coefficients."""
    return max((sum(abs(c) for _, c in t.exponent.items()) for t in f.terms), default=0.0)


def core_part(cand) -> ExpPoly:
    """The candidate without its periodic components."""
    return assemble(cand.equation, cand.params.with_(periodic=()))


def perturb(cand, factor: float = 1.01) -> ExpPoly:
    """Scale the non-periodic part of the candidate by ``factor``."""
    return cand.f + core_part(cand) * (factor - 1)


@dataclass
class TrialResult:
    index: int
    theorem: str
    case: str
    symbolic: bool
    max_rel_residual: float
    constraints_ok: bool
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.symbolic and self.max_rel_residual < 1e-8 and self.constraints_ok


@dataclass
class FuzzResult:
    seed: int
    trials: list = field(default_factory=list)

    @property
    def violations(self) -> list:
        return [t for t in self.trials if not t.ok]


def run_fuzz(trials: int, seed: int = 0, cases=None, samples: int = 100) -> FuzzResult:
    cases = list(cases or ALL_CASES)
    out = FuzzResult(seed)
    children = np.random.SeedSequence(seed).spawn(trials * len(cases))
    k = 0
    for theorem, case in cases:
        for t in range(trials):
            rng = np.random.default_rng(children[k])
            k += 1
            cand, report = draw_candidate(rng, theorem, case)
            sym = verify_symbolic(cand.equation, cand.f)
            num = verify_numeric(cand.equation, cand.f, samples=samples, seed=t)
            detail = ""
            if not (sym and num.numeric_pass and report.satisfied):
                detail = describe(cand)
            out.trials.append(TrialResult(t, theorem, case, sym, num.numeric_max_rel_residual,
                                          report.satisfied, detail))
    return out


def describe(cand) -> str:
    from .parser import format_expression

    eq, p = cand.equation, cand.params
    return (f"n={eq.n} i={eq.i} j={eq.j} a={eq.a} b={eq.b} omega={eq.omega} "
            f"alpha={eq.alpha} beta={eq.beta} c={list(eq.c)} "
            f"g={format_expression(ExpPoly.from_poly(eq.g))} params={p}")
