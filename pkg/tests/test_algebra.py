import cmath
import math

import numpy as np
import pytest

from conftest import random_point, random_poly, rcx
from trinomial_pdde.algebra import (
    DEFAULT_TOL,
    Poly,
    Tolerance,
    approx_eq,
    clog,
    csqrt,
    direction_decompose,
    direction_poly,
)
from trinomial_pdde.errors import ArityError, AxisError, DomainError, NonFiniteError, ValidationError


def newton_sqrt(x, steps=60):
    y = x if x > 1 else 1.0
    for _ in range(steps):
        y = 0.5 * (y + x / y)
    return y


def bisect_log(x, lo=0.0, hi=10.0):
    # solve exp(y) = x without calling a logarithm
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if math.exp(mid) < x:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


SQRT7 = newton_sqrt(7.0)
KAPPA = bisect_log(6 + 6 * SQRT7)


# ---------------------------------------------------------------- scalars

def test_csqrt_examples():
    assert csqrt(4) == 2
    assert csqrt(-1) == 1j
    assert abs(csqrt(7) - SQRT7) < 1e-14
    assert abs(SQRT7 - 2.6457513) < 1e-7


def test_csqrt_branch_cut_and_signed_zero():
    # the negative real axis maps onto the positive imaginary axis from both sides
    assert csqrt(complex(-4, -0.0)) == 2j
    assert csqrt(complex(-4, 0.0)) == 2j
    r = csqrt(complex(-1, -1e-300))
    assert r.real >= 0


def test_clog_examples():
    assert clog(1) == 0
    assert abs(clog(-1) - 1j * math.pi) < 1e-15
    assert abs(clog(complex(-1, -0.0)) - 1j * math.pi) < 1e-15
    assert abs(clog(6 + 6 * SQRT7) - KAPPA) < 1e-12
    assert abs(KAPPA - 3.0853219) < 1e-7
    with pytest.raises(DomainError):
        clog(0)


def test_nonfinite_surfaces():
    with pytest.raises(NonFiniteError):
        csqrt(complex(math.inf, 0))
    with pytest.raises(NonFiniteError):
        Poly.constant(1, math.nan)


def test_approx_eq_examples():
    assert approx_eq(1, 1 + 1e-12, DEFAULT_TOL)
    assert not approx_eq(0, 1e-8, Tolerance(1e-9, 1e-9))
    assert not approx_eq(1e6, 1e6 + 0.5, Tolerance(1e-9, 1e-9))
    with pytest.raises(ValueError):
        Tolerance(0, 1e-9)


def test_root_and_log_properties(rng):
    for _ in range(1000):
        x = rcx(rng, 10)
        if x == 0:
            continue
        r = csqrt(x)
        assert abs(r * r - x) <= 1e-12 * (1 + abs(x))
        assert r.real > 0 or (r.real == 0 and r.imag >= 0)
        lg = clog(x)
        assert abs(cmath.exp(lg) - x) <= 1e-12 * (1 + abs(x))
        assert -math.pi < lg.imag <= math.pi


# ---------------------------------------------------------------- polynomials

z1, z2, z3 = (Poly.variable(3, k) for k in (1, 2, 3))
G21 = Poly.linear([4, KAPPA, 7], 1j * math.pi / 3)


def test_poly_ring_examples():
    assert ((z1 + 1) + (-z1)) == Poly.constant(3, 1)
    sq = (z1 + z2) * (z1 + z2)
    assert sq == z1 * z1 + z2 * z2 + z1 * z2 * 2
    assert G21 * 1 == G21
    assert (z1 - z1).is_zero() and len(z1 - z1) == 0


def test_poly_arity_mismatch():
    with pytest.raises(ArityError):
        z1 + Poly.variable(2, 1)
    with pytest.raises(ArityError):
        z1((1, 2))


def test_partial_examples():
    assert (z1 * z1 * z3).partial(1) == z1 * z3 * 2
    assert z1.partial(2).is_zero()
    assert G21.partial(3) == Poly.constant(3, 7)
    with pytest.raises(AxisError):
        z1.partial(4)


def test_translate_examples():
    p = Poly.variable(2, 1) ** 2
    assert p.translate([1, 0]) == p + Poly.variable(2, 1) * 2 + 1
    shifted = G21.translate([7, -2, -4])
    # L(c) = 28 - 2 kappa - 28
    assert shifted.approx_eq(G21 - 2 * KAPPA)
    assert G21.translate([0, 0, 0]) == G21


def test_eval_examples():
    assert (z1 * z2)((2, 3, 99)) == 6
    assert Poly.constant(3, 5)((1, 2, 3)) == 5
    assert ((z1 + z2) ** 2)((1, 1j, 0)) == 2j


def test_grlex_order_is_deterministic():
    p = z3 + z1 * z2 + 1 + z1
    assert [m for m, _ in p.items()] == [(0, 0, 0), (0, 0, 1), (1, 0, 0), (1, 1, 0)]


def test_direction_decompose_examples():
    w = z3 - z1 * 0.5
    assert direction_decompose(w, 2, 1, 1, 3) == Poly.variable(1, 1)
    assert direction_decompose(z1, 2, 1, 1, 3) is None
    psi = direction_decompose(w * w + 1, 2, 1, 1, 3)
    # expected psi(w) = w^2 + 1 from expanding the square by hand
    assert psi.approx_eq(Poly.variable(1, 1) ** 2 + 1)
    assert direction_decompose(w + z2, 2, 1, 1, 3) is None
    with pytest.raises(ValidationError):
        direction_decompose(w, 0, 1, 1, 3)
    assert direction_poly(2, 1, 1, 3, 3) == w


def test_translate_roundtrip_property(rng):
    for _ in range(200):
        n = int(rng.integers(1, 5))
        p = random_poly(rng, n, max_deg=4)
        c = [rcx(rng) for _ in range(n)]
        back = p.translate(c).translate([-x for x in c])
        assert back.approx_eq(p, Tolerance(1e-12, 1e-12))


def test_translate_roundtrip_exact_on_dyadics(rng):
    # integer coefficients and half-integer shifts keep every float operation exact
    for _ in range(200):
        n = int(rng.integers(1, 5))
        p = random_poly(rng, n, max_deg=4)
        p = Poly(n, {m: complex(round(c.real * 8), round(c.imag * 8)) for m, c in p.items()})
        c = [complex(int(rng.integers(-4, 5)) / 2, int(rng.integers(-4, 5)) / 2) for _ in range(n)]
        assert p.translate(c).translate([-x for x in c]) == p


def test_calculus_properties(rng):
    for _ in range(100):
        n = int(rng.integers(2, 5))
        p, q = random_poly(rng, n), random_poly(rng, n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert p.partial(i).partial(j).approx_eq(p.partial(j).partial(i))
            lhs = (p * q).partial(i)
            assert lhs.approx_eq(p * q.partial(i) + q * p.partial(i))


def test_eval_homomorphism(rng):
    for _ in range(100):
        n = int(rng.integers(1, 4))
        p, q = random_poly(rng, n), random_poly(rng, n)
        z = random_point(rng, n)
        c = random_point(rng, n)
        assert approx_eq((p * q)(z), p(z) * q(z), Tolerance(1e-11, 1e-11))
        assert approx_eq(p.translate(c)(z), p(z + c), Tolerance(1e-11, 1e-11))
        many = p.eval_many(np.array([z, z + c]))
        assert approx_eq(many[0], p(z), Tolerance(1e-12, 1e-12))
