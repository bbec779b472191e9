import cmath

import numpy as np
import pytest

from conftest import random_expoly, random_point, random_poly, rcx
from trinomial_pdde.algebra import Poly, Tolerance, approx_eq
from trinomial_pdde.errors import ArityError, EvaluationError
from trinomial_pdde.exppoly import ExpPoly, ep_exp, ep_from_poly, ep_is_zero

z1, z2 = Poly.variable(2, 1), Poly.variable(2, 2)
TOL = Tolerance(1e-10, 1e-10)


def test_canonical_form_folds_constants_and_merges():
    f = ep_exp(z1 + 2) + ep_exp(z1) * 3
    assert len(f.terms) == 1
    assert approx_eq(f.terms[0].coeff.constant_term, cmath.exp(2) + 3, TOL)
    assert f.terms[0].exponent == z1
    assert (ep_exp(z1) - ep_exp(z1)).is_empty()
    assert ep_exp(Poly.constant(2, 0)) == ExpPoly.constant(2, 1)


def test_term_order_is_deterministic():
    a = ep_exp(z1 * z2) + ep_exp(z2) + ExpPoly.constant(2, 1) + ep_exp(z1)
    b = ep_exp(z1) + ExpPoly.constant(2, 1) + ep_exp(z1 * z2) + ep_exp(z2)
    assert a == b and hash(a) == hash(b)
    assert [t.exponent.degree for t in a.terms] == [0, 1, 1, 2]


def test_zero_test_examples():
    assert ep_is_zero(ExpPoly.zero(2))
    assert not ep_is_zero(ep_exp(z1))
    # e^{z1} e^{-z1} = 1
    assert (ep_exp(z1) * ep_exp(-z1)).approx_eq(ExpPoly.constant(2, 1))
    # exponents that differ only by rounding must cancel
    near = ep_exp(z1 * (1 + 1e-15)) - ep_exp(z1)
    assert near.is_zero()
    assert not (ep_exp(z1 * 1.001) - ep_exp(z1)).is_zero()


def test_defect_is_relative():
    f = ep_exp(z1) * 1e-3
    assert abs(f.defect() - 1e-3) < 1e-15
    assert ExpPoly.zero(2).defect() == 0


def test_operators_examples():
    f = ep_exp(z1 * z1) * z2
    # d/dz1 (z2 e^{z1^2}) = 2 z1 z2 e^{z1^2}
    assert f.partial(1) == ep_exp(z1 * z1) * (z1 * z2 * 2)
    assert f.partial(2) == ep_exp(z1 * z1)
    shifted = ep_exp(z1).translate([1, 0])
    assert shifted.approx_eq(ep_exp(z1) * cmath.e)
    assert ep_exp(z1).delta([1, 0]).approx_eq(ep_exp(z1) * (cmath.e - 1))
    d = f.directional(2, 3, 1, 2)
    assert d.approx_eq(f.partial(1) * 2 + f.partial(2) * 3)


def test_growth_order_and_helpers():
    f = ep_exp(z1 * z1 * z2) + ep_from_poly(z1)
    assert f.growth_order() == 3
    assert ep_from_poly(z1).as_poly() == z1
    assert ExpPoly.constant(2, 5).as_constant() == 5
    assert f.coefficient_of(z1 * z1 * z2) == Poly.constant(2, 1)


def test_compose_linear():
    f1 = ExpPoly.exp(Poly.variable(1, 1) * 2) * Poly.variable(1, 1)
    w = z2 - z1 * 0.5
    g = f1.compose_linear(w)
    pt = (0.3 + 0.1j, -0.2 + 0.4j)
    assert approx_eq(g(pt), f1((pt[1] - 0.5 * pt[0],)), TOL)
    with pytest.raises(ArityError):
        ep_exp(z1).compose_linear(w)


def test_errors():
    with pytest.raises(ArityError):
        ep_exp(z1) + ExpPoly.constant(3, 1)
    with pytest.raises(ArityError):
        ep_exp(z1)((1,))
    with pytest.raises(EvaluationError):
        ep_exp(z1 * 1000)((1000, 0))
    vals = ep_exp(z1 * 1000).eval_many(np.array([[1000, 0]]))
    assert not np.isfinite(vals[0])


# ---------------------------------------------------------------- properties

def test_zero_test_soundness(rng):
    for _ in range(200):
        n = int(rng.integers(1, 4))
        f = random_expoly(rng, n)
        assert ep_is_zero(f - f)
        fresh = random_poly(rng, n, 2, 3, constant=False) + Poly.variable(n, 1) * 7.5
        if any(t.exponent.approx_eq(fresh) for t in f.terms):
            continue
        assert not ep_is_zero(f + ep_exp(fresh))


def test_ring_agrees_with_evaluation(rng):
    for _ in range(100):
        n = int(rng.integers(1, 4))
        f, g = random_expoly(rng, n), random_expoly(rng, n)
        z = random_point(rng, n)
        c = random_point(rng, n)
        assert approx_eq((f * g)(z), f(z) * g(z), TOL)
        assert approx_eq((f + g)(z), f(z) + g(z), TOL)
        assert approx_eq(f.translate(c)(z), f(z + c), TOL)
        assert approx_eq(f.delta(c)(z), f(z + c) - f(z), TOL)
        assert approx_eq(f.eval_many(z[None, :])[0], f(z), TOL)


def test_shift_composition(rng):
    for _ in range(100):
        n = int(rng.integers(1, 4))
        f = random_expoly(rng, n)
        c, d = [rcx(rng) for _ in range(n)], [rcx(rng) for _ in range(n)]
        both = f.translate(c).translate(d)
        assert both.approx_eq(f.translate([x + y for x, y in zip(c, d)]))
