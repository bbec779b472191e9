"""Shared random generators for the property tests."""
import numpy as np
import pytest

from trinomial_pdde.algebra import Poly
from trinomial_pdde.exppoly import ExpPoly


def rcx(rng, scale=1.0):
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def random_poly(rng, n, max_deg=3, max_terms=4, scale=1.0, constant=True):
    terms = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        deg = int(rng.integers(0 if constant else 1, max_deg + 1))
        m = [0] * n
        for _ in range(deg):
            m[int(rng.integers(0, n))] += 1
        terms[tuple(m)] = rcx(rng, scale)
    return Poly(n, terms)


def random_expoly(rng, n, max_terms=3, max_deg=2, scale=1.0):
    f = ExpPoly.zero(n)
    for _ in range(int(rng.integers(1, max_terms + 1))):
        q = random_poly(rng, n, max_deg, 3, scale, constant=False)
        p = random_poly(rng, n, 1, 2, scale)
        f = f + ExpPoly.exp(q) * p
    return f


def random_point(rng, n):
    return np.array([rcx(rng) for _ in range(n)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    # repeat the acceptance verdicts, one line per criterion
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
