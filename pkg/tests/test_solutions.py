import cmath
import math

import pytest

from test_algebra import KAPPA, SQRT7, bisect_log, newton_sqrt
from trinomial_pdde.algebra import Poly, Tolerance, approx_eq
from trinomial_pdde.equation import Branch, TrinomialPDDE, Variant, verify, verify_symbolic
from trinomial_pdde.errors import (
    NoSolutionError,
    NonElementaryError,
    ValidationError,
    ZeroDenominatorError,
)
from trinomial_pdde.exppoly import ExpPoly
from trinomial_pdde.fuzz import draw_candidate
from trinomial_pdde.solutions import (
    CaseParameters,
    UnivariateComponent,
    assemble,
    build_periodic,
    check_constraints,
    construct,
    derive_params,
    kernel_form,
    lam,
    n1_constant,
    secular_factor,
    solve_split,
    solve_xi,
)

SQRT13 = newton_sqrt(13.0)
COEFF21 = (6 + 6 * SQRT7) / (2 * newton_sqrt(14.0))


def eq21(**kw):
    base = dict(n=3, i=1, j=3, a=1, b=2, omega=-3, alpha=2, beta=-1, c=(7, -2, -4),
                g=Poly.linear([4, KAPPA, 7], 1j * math.pi / 3), variant=Variant.SHIFT)
    base.update(kw)
    return TrinomialPDDE(**base)


def eq23():
    k2 = bisect_log((6 + 3 * SQRT13) / (4 + SQRT13))
    return TrinomialPDDE(3, 1, 3, 1, 3, -4, 2, 1, (2, 2, 3), Poly.linear([3, k2, -2]),
                         Variant.DIFFERENCE)


def half_g_coeff(eq, f):
    return f.coefficient_of((eq.g * 0.5).without_constant()).constant_term / cmath.exp(
        eq.g.constant_term / 2)


# ---------------------------------------------------------------- 2.1(ii) anchor

def test_example21_coefficient_and_xi():
    eq = eq21()
    for branch, xi2 in ((Branch.PLUS, 0.5), (Branch.MINUS, 2.0)):
        roots = solve_xi(eq, "2.1", (4, KAPPA, 7), branch)
        assert all(abs(r * r - xi2) < 1e-10 for r in roots)
        params = derive_params(eq, "2.1", "ii", branch=branch)
        cand, rep = construct(eq, params)
        assert rep.satisfied
        assert abs(half_g_coeff(eq, cand.f) - COEFF21) < 1e-10
        assert abs(COEFF21 - 2.9231) < 1e-4
        assert verify_symbolic(eq, cand.f)


def test_example21_constraint_values():
    eq = eq21()
    params = CaseParameters("2.1", "ii", L=(4, KAPPA, 7), xi=1 / newton_sqrt(2.0))
    row = check_constraints(eq, params).entries[-1]
    assert row.satisfied
    target = 1 / (6 + 6 * SQRT7)
    assert abs(row.lhs - target) < 1e-12 and abs(row.rhs - target) < 1e-12


def test_constraint_negative_control():
    eq = eq21(c=(7, 0, -4))  # L(c) = 0
    rep = check_constraints(eq, CaseParameters("2.1", "ii", L=(4, KAPPA, 7), xi=2))
    assert not rep.satisfied and rep.entries[-1].abs_err > 0


def test_branch_symmetry():
    eq = eq21()
    p = derive_params(eq, "2.1", "ii", branch=Branch.PLUS)
    q = p.with_(branch=Branch.MINUS, xi=1 / p.xi)
    assert assemble(eq, p).approx_eq(assemble(eq, q))


def test_solve_xi_example23_and_resubstitution():
    eq = eq23()
    k = tuple(eq.g.linear_part())
    E = cmath.exp(sum(x * y for x, y in zip(k, eq.c)) / 2)
    assert abs(E - (6 + 3 * SQRT13) / (4 + SQRT13)) < 1e-12
    for branch in Branch:
        for xi in solve_xi(eq, "2.2", k, branch):
            rep = check_constraints(eq, CaseParameters("2.2", "iii", branch=branch, L=k, xi=xi))
            assert rep.entries[-1].abs_err < 1e-10


def test_solve_xi_boundary():
    # choose c so that E = e^{L(c)/2} = A / w1: then xi^2 = 0
    eq = eq21()
    p = eq.omegas()
    L = (4, KAPPA, 7)
    A = lam(eq, L) / (2 * newton_sqrt(2.0))
    target = 2 * cmath.log(A / p.omega1)
    c = (target.real / 4, 0, 0)
    eq2 = eq21(c=c)
    with pytest.raises(NoSolutionError):
        solve_xi(eq2, "2.1", L)


def test_solve_xi_resubstitution_random(rng):
    n = 0
    while n < 50:
        cand, rep = draw_candidate(rng, "2.2", "iii")
        assert rep.entries[-1].abs_err < 1e-10
        cand, rep = draw_candidate(rng, "2.1", "ii")
        assert rep.entries[-1].abs_err < 1e-10 * max(1, abs(rep.entries[-1].rhs))
        n += 1


# ---------------------------------------------------------------- other cases

def test_t21_iii_rejects_equal_components():
    eq = eq21(g=Poly.linear([2, 2, 2]))
    params = CaseParameters("2.1", "iii", L1=(1, 1, 1), L2=(1, 1, 1), E1=0, E2=0)
    with pytest.raises(ValidationError) as exc:
        assemble(eq, params)
    assert exc.value.hypothesis == "L₁(z)+H₁(s) ≠ L₂(z)+H₂(s)"


def test_t21_iii_split_solves_both_constraints():
    # a short c keeps the split exponents moderate, so the sampled residual stays resolvable
    eq = eq21(g=Poly.linear([0.3, 0.2, -0.1], 0.4), c=(0.5, -0.2, 0.3))
    L1, L2 = solve_split(eq, "2.1", (0.3, 0.2, -0.1))
    params = derive_params(eq, "2.1", "iii", base=CaseParameters("2.1", "iii", L1=L1, L2=L2,
                                                                 E1=0.1))
    cand, rep = construct(eq, params)
    assert rep.satisfied and verify(eq, cand.f).passed


def test_t21_i_and_n1():
    g = Poly.univariate_in([0.1, 0.2j, 0.05], Poly.linear([0.5, 0, 1]))  # w = z3 + z1/2
    eq = eq21(g=g)
    assert approx_eq(eq.b * n1_constant(eq) ** 2, 1, Tolerance(1e-12, 1e-12))
    for sign in (1, -1):
        cand, rep = construct(eq, CaseParameters("2.1", "i", sign=sign))
        assert rep.satisfied and verify(eq, cand.f).passed
    with pytest.raises(ValidationError):
        assemble(eq21(), CaseParameters("2.1", "i"))


def diff_eq(g, c=(0, 1), alpha=1, beta=1, a=1, b=2, omega=0.3):
    return TrinomialPDDE(2, 1, 2, a, b, omega, alpha, beta, c, g, Variant.DIFFERENCE)


def test_t22_ii_constant_g():
    R = 0.7 + 0.2j
    eq = diff_eq(Poly.constant(2, R))
    assert secular_factor(eq) == Poly.variable(2, 1)
    for sign in (1, -1):
        cand, rep = construct(eq, CaseParameters("2.2", "ii", sign=sign))
        expect = ExpPoly.from_poly(Poly.variable(2, 1)) * (sign * cmath.exp(R / 2))
        assert cand.f.approx_eq(expect)
        assert rep.satisfied and verify(eq, cand.f).passed


def test_t22_ii_nonconstant_kappa_rejected():
    z1 = Poly.variable(2, 1)
    with pytest.raises(NonElementaryError):
        assemble(diff_eq(z1 * z1), CaseParameters("2.2", "ii"))


def test_t22_ii_constant_kappa():
    # g = 4 pi i z1 with c = (1, 0): a . c = 4 pi i, kappa = 2 pi i
    eq = diff_eq(Poly.linear([4j * math.pi, 0]), c=(1, 0))
    cand, rep = construct(eq, CaseParameters("2.2", "ii"))
    assert rep.satisfied and verify(eq, cand.f).passed
    assert abs(half_g_coeff(eq, cand.f) - 1 / (2j * math.pi)) < 1e-12


def test_t22_i_cases():
    w = Poly.linear([-1, 1])  # alpha = beta = 1
    eq = diff_eq(Poly.univariate_in([0.2, 0.3], w), c=(0.5, 2))
    cand, rep = construct(eq, CaseParameters("2.2", "i"))
    assert rep.satisfied and verify(eq, cand.f).passed
    # resonant slope e^{mu tau/2} = 1
    tau = eq.tau
    eq = diff_eq(Poly.univariate_in([0.2, 4j * math.pi / tau], w), c=(0.5, 2))
    cand, rep = construct(eq, CaseParameters("2.2", "i"))
    assert rep.satisfied and verify(eq, cand.f).passed
    with pytest.raises(NonElementaryError):
        assemble(diff_eq(Poly.univariate_in([0, 0, 1], w)), CaseParameters("2.2", "i"))


def test_t22_iv_and_variant_mismatch():
    eq = diff_eq(Poly.linear([0.4, -0.3], 0.2), c=(0.5, 0.7))
    params = derive_params(eq, "2.2", "iv")
    cand, rep = construct(eq, params)
    assert rep.satisfied and verify(eq, cand.f).passed
    with pytest.raises(ValidationError):
        assemble(eq, CaseParameters("2.1", "ii", L=(0.4, -0.3), xi=1))


def test_zero_denominator():
    eq = diff_eq(Poly.linear([1, -1], 0.2), c=(0.5, 0.7))  # lambda(k) = 0
    with pytest.raises(ZeroDenominatorError):
        assemble(eq, CaseParameters("2.2", "iii", L=(1, -1), xi=1.5))


# ---------------------------------------------------------------- periodic parts

def test_build_periodic_examples():
    f = build_periodic(2, [(1, 1)], 2, 1, 1, 3, 3)
    expect = ExpPoly.exp(Poly.linear([-0.5j * math.pi, 0, 1j * math.pi]))
    assert f.approx_eq(expect)
    assert f.directional(2, 1, 1, 3).is_zero()
    assert f.translate([2, 2, 3]).approx_eq(f)
    assert build_periodic(2, [], 2, 1, 1, 3, 3).is_empty()
    assert build_periodic(2, [(0, 5)], 2, 1, 1, 3, 3).approx_eq(ExpPoly.constant(3, 5))
    with pytest.raises(ZeroDenominatorError):
        build_periodic(0, [(1, 1)], 2, 1, 1, 3, 3)
    assert UnivariateComponent.periodic(2, [(1, 1), (-3, 2j)]).is_periodic()


def test_kernel_property(rng):
    for case in ("ii", "iii", "iv"):
        cand, _ = draw_candidate(rng, "2.2", case)
        eq = cand.equation
        if abs(eq.tau) < 0.5:
            continue
        extra = build_periodic(eq.tau, [(1, 0.5), (-1, 0.25j)], eq.alpha, eq.beta,
                               eq.i, eq.j, eq.n)
        assert verify_symbolic(eq, cand.f + extra)
        bad = ExpPoly.exp(Poly.variable(eq.n, eq.i) * 0.5) * 0.1
        assert not verify_symbolic(eq, cand.f + bad)


def test_kernel_form_is_D_invariant():
    eq = eq21()
    ell = kernel_form(eq)
    assert abs(lam(eq, ell)) < 1e-15
    assert abs(sum(x * y for x, y in zip(ell, eq.c))) > 0


def test_constraint_residual_equivalence(rng):
    for case in (("2.1", "ii"), ("2.2", "iii")):
        for _ in range(10):
            cand, rep = draw_candidate(rng, *case)
            eq, p = cand.equation, cand.params
            bad = p.with_(xi=p.xi * 1.05)
            f = assemble(eq, bad)
            assert verify_symbolic(eq, f) == check_constraints(eq, bad, f).satisfied
            assert verify_symbolic(eq, cand.f) == rep.satisfied


def test_periodic_rejected_for_shift():
    comp = UnivariateComponent.periodic(3, [(1, 1)])
    with pytest.raises(ValidationError):
        assemble(eq21(), derive_params(eq21(), "2.1", "ii").with_(periodic=(comp,)))
