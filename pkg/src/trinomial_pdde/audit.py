"""Embedded corpus of the four worked examples and the audit that checks them.

Each fixture holds the printed equation (one per sign choice where the
printed data carries a ∓), the printed solution, the parameters implied by
the printed solution, and labelled suggested-correction variants.  Three
modes are audited:

    verbatim     the printed f, as written (H components set to 0)
    corrected    the labelled correction variants
    constructed  f rebuilt from the printed equation by construct + solvers

The residual decides every verdict; nothing here assumes the printed data is
right or wrong.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from .algebra import csqrt, format_cx
from .config import parse_equation_config, parse_params
from .equation import Branch, TrinomialPDDE, VerificationReport, verify
from .errors import TrinomialError
from .exppoly import ExpPoly
from .parser import format_expression, parse_expression
from .solutions import (
    CaseParameters,
    ConstraintReport,
    UnivariateComponent,
    check_constraints,
    construct,
    derive_params,
    lam,
)

MODES = ("verbatim", "corrected", "constructed")


@dataclass(frozen=True)
class Variant:
    """One sign choice of a fixture ("upper" reads ∓ as -, ± as +)."""
    label: str
    equation: str
    solution: str
    implied: str = ""
    corrections: tuple = ()  # (label, expression)


@dataclass(frozen=True)
class Fixture:
    id: str
    theorem: str
    case: str
    variants: tuple
    fourier: tuple = ()  # periodic component used in constructed mode
    note: str = ""


def _eq(a, b, omega, alpha, beta, c, g, variant):
    return (f"n = 3\ni = 1\nj = 3\na = {a}\nb = {b}\nomega = {omega}\n"
            f"alpha = {alpha}\nbeta = {beta}\nc = {c}\ng = {g}\nvariant = {variant}\n")


G21 = "4*z1 + ln(6+6*sqrt(7))*z2 + 7*z3 + pi*i/3"
_EX21 = Fixture(
    "2.1", "2.1", "ii",
    (Variant(
        "as printed",
        _eq(1, 2, -3, 2, -1, "[7, -2, -4]", G21, "shift"),
        f"1/(2*sqrt(14))*exp(({G21})/2)",
        implied="L = [4, ln(6+6*sqrt(7)), 7]\n",
        corrections=(("coefficient times e^{-L(c)/2} = 6+6*sqrt(7)",
                      f"(6+6*sqrt(7))/(2*sqrt(14))*exp(({G21})/2)"),),
    ),),
    note="H(s) instantiated as 0",
)


def _ex22_variant(label, mp, pm):
    X = f"9*sqrt(2)/(2*sqrt(2){mp}sqrt(5))"
    Y = f"18*sqrt(2)/(2*sqrt(2){pm}sqrt(5))"
    g = f"15*z1 + (ln({X}) + ln({Y}))/3*z2 - 6*z3 + 16*pi*i/63"
    k = f"1/({mp}2*sqrt(5))"
    f = (f"{k}*exp(5*z1 + ln({X})/3*z2 - 2*z3 + pi*i/7 - ln({X}))"
         f" - {k}*exp(10*z1 + ln({Y})/3*z2 - 4*z3 + pi*i/9 - ln({Y}))")
    implied = (f"L1 = [5, ln({X})/3, -2]\nL2 = [10, ln({Y})/3, -4]\n"
               f"E1 = pi*i/7\nE2 = pi*i/9\n")
    return Variant(label, _eq(2, 3, -4, 1, -2, "[2, 3, 5]", g, "shift"), f, implied)


_EX22 = Fixture("2.2", "2.1", "iii",
                (_ex22_variant("upper signs", "-", "+"), _ex22_variant("lower signs", "+", "-")),
                note="H(s), H1(s), H2(s) instantiated as 0")

G23 = "3*z1 + ln((6+3*sqrt(13))/(4+sqrt(13)))*z2 - 2*z3 + pi*i/7"
K23 = "sqrt(3)*(4+3*sqrt(13))/(4*sqrt(26))"
_EX23 = Fixture(
    "2.3", "2.2", "iii",
    (Variant(
        "as printed",
        _eq(1, 3, -4, 2, 1, "[2, 2, 3]", G23, "difference"),
        f"{K23}*exp(({G23})/2) + exp(pi*i*(z1/2 + z3))",
        implied=f"k = [3, ln((6+3*sqrt(13))/(4+sqrt(13))), -2]\n",
        corrections=(("periodic term as a function of w = z3 - z1/2",
                      f"{K23}*exp(({G23})/2) + exp(pi*i*(z3 - z1/2))"),),
    ),),
    fourier=((1, 1),),
)


def _ex24_variant(label, mp, pm, upper):
    X = f"3*(23{mp}sqrt(22))/(5{mp}sqrt(22))"
    Y = f"sqrt(3)*(36*sqrt(3)+5{pm}sqrt(22))/(5{pm}sqrt(22))"
    g = f"12*z1 + (ln({X}) + ln({Y}))*z2 + 9*z3 + (2*pi*i + sqrt(5) + sqrt(3))/sqrt(7)"
    s = "-" if upper else ""
    t1 = f"(5{mp}sqrt(22))/({s}36*sqrt(66))*exp(4*z1 + ln({X})*z2 + 3*z3 + (pi*i + sqrt(3))/sqrt(7))"
    t2 = f"(5{pm}sqrt(22))/({s}72*sqrt(66))*exp(8*z1 + ln({Y})*z2 + 6*z3 + (pi*i + sqrt(5))/sqrt(7))"
    core = f"{t1} - {t2}"
    implied = (f"L1 = [4, ln({X}), 3]\nL2 = [8, ln({Y}), 6]\n"
               f"R3 = (pi*i + sqrt(3))/sqrt(7)\nR4 = (pi*i + sqrt(5))/sqrt(7)\n")
    return Variant(label, _eq(3, 1, -5, 3, 2, "[3, 1, -4]", g, "difference"),
                   f"{core} + exp(pi*i*(2*z1/3 + z3))", implied,
                   (("periodic term as a function of w = z3 - 2*z1/3",
                     f"{core} + exp(pi*i*(z3 - 2*z1/3))"),))


_EX24 = Fixture("2.4", "2.2", "iv",
                (_ex24_variant("upper signs", "-", "+", True),
                 _ex24_variant("lower signs", "+", "-", False)),
                fourier=((-3, 1),))

FIXTURES = {fx.id: fx for fx in (_EX21, _EX22, _EX23, _EX24)}


# ---------------------------------------------------------------- results

@dataclass
class AuditResult:
    example: str
    mode: str
    label: str
    report: VerificationReport
    constraints: ConstraintReport | None
    f_text: str
    branch: Branch | None = None
    findings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        ok = self.report.passed and bool(self.report.symbolic_zero)
        if self.mode == "constructed" and self.constraints is not None:
            ok = ok and self.constraints.satisfied
        return ok

    def as_dict(self) -> dict:
        d = self.report.as_dict()
        d.update({
            "example": self.example, "mode": self.mode, "label": self.label,
            "passed": self.passed,
            "branch": self.branch.value if self.branch else None,
            "f": self.f_text,
            "constraints": self.constraints.as_list() if self.constraints else [],
            "findings": list(self.findings),
        })
        return d

    def format(self) -> str:
        head = (f"Example {self.example} [{self.mode}] {self.label}: "
                f"{'PASS' if self.passed else 'FAIL'}  symbolic_zero={self.report.symbolic_zero} "
                f"max_rel_residual={self.report.numeric_max_rel_residual:.3e}")
        if self.branch is not None:
            head += f"  branch={self.branch.value}"
        lines = [head, f"  f = {self.f_text}"]
        lines += [f"  * {x}" for x in self.findings]
        if self.constraints is not None and self.constraints.entries:
            lines.append(self.constraints.format())
        return "\n".join(lines)


@dataclass
class AuditOutcome:
    example: str
    mode: str
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


# ---------------------------------------------------------------- helpers

def fixture_equation(fx: Fixture, v: Variant) -> TrinomialPDDE:
    return parse_equation_config(v.equation)


def _periodic(fx: Fixture, eq: TrinomialPDDE) -> tuple:
    if not fx.fourier:
        return ()
    return (UnivariateComponent.periodic(eq.tau, fx.fourier),)


def candidates(fx: Fixture, eq: TrinomialPDDE):
    """Every constructed candidate over both branches and both xi roots."""
    out = []
    for branch in Branch:
        for idx in (0, 1):
            try:
                params = derive_params(eq, fx.theorem, fx.case, branch=branch, xi_index=idx,
                                       periodic=_periodic(fx, eq))
                cand, rep = construct(eq, params)
            except TrinomialError:
                continue
            out.append((cand, rep))
            if fx.case in ("iii", "iv") and (fx.theorem, fx.case) != ("2.2", "iii"):
                break  # no xi to vary for the split cases
    return out


def implied_xi(eq: TrinomialPDDE, theorem: str, coeff: complex, L, branch: Branch) -> complex:
    """The xi whose case formula reproduces a printed coefficient of e^{g/2}.

    2.1(ii): coeff = (xi^2-1)/(xi sqrt(b)(w2-w1)) e^{-L(c)/2}
    2.2(iii): coeff = 2(w2 xi^2 - w1)/(xi sqrt(a)(w2-w1) lambda)
    Both rearrange to a quadratic in xi; the root of larger modulus is returned.
    """
    p = eq.omegas(branch)
    d = p.omega2 - p.omega1
    if theorem == "2.1":
        K = coeff * cmath.exp(sum(x * y for x, y in zip(L, eq.c)) / 2) * csqrt(eq.b) * d
        qa, qb, qc = 1, -K, -1
    else:
        K = coeff * csqrt(eq.a) * d * lam(eq, L)
        qa, qb, qc = 2 * p.omega2, -K, -2 * p.omega1
    disc = csqrt(qb * qb - 4 * qa * qc)
    return max(((-qb + disc) / (2 * qa), (-qb - disc) / (2 * qa)), key=abs)


def _term_ratio_findings(eq, printed: ExpPoly, reference: ExpPoly) -> list:
    """Compare printed terms with the constructed ones exponent by exponent."""
    out = []
    matched = set()
    for t in reference.terms:
        hit = None
        for k, s in enumerate(printed.terms):
            if k not in matched and s.exponent.approx_eq(t.exponent, eq.tol):
                hit = k
                break
        if hit is None:
            out.append(f"constructed term exp({format_expression(t.exponent)}) "
                       "has no printed counterpart")
            continue
        matched.add(hit)
        pc, rc = printed.terms[hit].coeff, t.coeff
        if pc.is_constant() and rc.is_constant() and rc.constant_term != 0:
            ratio = pc.constant_term / rc.constant_term
            out.append(f"printed/constructed coefficient ratio {format_cx(ratio)} "
                       f"for exp({format_expression(t.exponent)}) "
                       f"(printed {format_cx(pc.constant_term)}, "
                       f"constructed {format_cx(rc.constant_term)})")
    for k, s in enumerate(printed.terms):
        if k in matched:
            continue
        term = ExpPoly._build(eq.n, [(s.coeff, s.exponent)])
        dimg = eq.D(term)
        msg = f"printed term {format_expression(term)} is not in the constructed solution"
        if s.coeff.is_constant():
            rate = s.exponent.directional(eq.alpha, eq.beta, eq.i, eq.j)
            if rate.is_constant():
                msg += f"; its D-image is {format_cx(rate.constant_term)} times the term"
        elif not dimg.is_zero(eq.tol):
            msg += "; its D-image is nonzero"
        out.append(msg)
    return out


def _best(cands, eq):
    scored = []
    for cand, rep in cands:
        r = verify(eq, cand.f)
        scored.append((not (r.passed and rep.satisfied), r.numeric_max_rel_residual, cand, rep, r))
    scored.sort(key=lambda x: (x[0], x[1]))
    return scored[0] if scored else None


# ---------------------------------------------------------------- audit

def _audit_constructed(fx: Fixture, v: Variant, eq) -> AuditResult:
    best = _best(candidates(fx, eq), eq)
    if best is None:
        rep = VerificationReport(False, float("inf"), 0, 0)
        return AuditResult(fx.id, "constructed", v.label, rep, None, "(no candidate)",
                           findings=["no admissible parameters found"])
    _, _, cand, crep, r = best
    findings = []
    p = cand.params
    if p.xi is not None:
        findings.append(f"xi = {format_cx(p.xi)}, xi^2 = {format_cx(p.xi ** 2)}")
    if fx.theorem == "2.1" and fx.case == "ii":
        lead = cand.f.terms[0].coeff.constant_term / cmath.exp(eq.g.constant_term / 2)
        findings.append(f"coefficient of e^(g/2) = {format_cx(lead)}")
    return AuditResult(fx.id, "constructed", v.label, r, crep, format_expression(cand.f),
                       p.branch, findings)


def _audit_printed(fx: Fixture, v: Variant, eq, mode: str, label: str, text: str) -> AuditResult:
    f = parse_expression(text, eq.n)
    r = verify(eq, f)
    findings = []
    best = _best(candidates(fx, eq), eq)
    if best is not None and not r.symbolic_zero:
        findings += _term_ratio_findings(eq, f, best[2].f)
    crep = None
    branch = None
    if v.implied:
        # constraints at the parameters the printed solution implies; both
        # branches are evaluated and the one satisfying more rows is shown
        reports = []
        for br in Branch:
            try:
                params = parse_params(v.implied, eq, fx.theorem, fx.case).with_(branch=br)
                params = _complete_implied(fx, eq, f, params)
                rep = check_constraints(eq, params)
            except TrinomialError as exc:
                findings.append(f"implied parameters rejected on branch {br.value}: {exc}")
                continue
            reports.append((sum(not e.satisfied for e in rep.entries if e.gating), br, rep))
        if reports:
            reports.sort(key=lambda x: x[0])
            _, branch, crep = reports[0]
    return AuditResult(fx.id, mode, label, r, crep, format_expression(f), branch, findings)


def _complete_implied(fx, eq, f: ExpPoly, params: CaseParameters) -> CaseParameters:
    if fx.case not in ("ii", "iii") or (fx.theorem, fx.case) == ("2.1", "iii"):
        return params
    # xi from the printed coefficient of e^{g/2}
    half = ExpPoly.exp(eq.g * 0.5)
    lead = half.terms[0]
    hit = next((t for t in f.terms if t.exponent.approx_eq(lead.exponent, eq.tol)), None)
    if hit is None or not hit.coeff.is_constant():
        return params
    coeff = hit.coeff.constant_term / lead.coeff.constant_term
    xi = implied_xi(eq, fx.theorem, coeff, params.L, params.branch)
    return params.with_(xi=xi)


def audit_example(example: str, mode: str = "constructed") -> AuditOutcome:
    if example not in FIXTURES:
        raise KeyError(f"unknown example {example!r}; choose from {', '.join(FIXTURES)}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    fx = FIXTURES[example]
    results = []
    for v in fx.variants:
        eq = fixture_equation(fx, v)
        if mode == "constructed":
            results.append(_audit_constructed(fx, v, eq))
        elif mode == "verbatim":
            results.append(_audit_printed(fx, v, eq, mode, v.label, v.solution))
        else:
            for label, text in v.corrections:
                results.append(_audit_printed(fx, v, eq, mode, f"{v.label}; {label}", text))
    return AuditOutcome(example, mode, results)
