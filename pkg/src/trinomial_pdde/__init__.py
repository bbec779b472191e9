"""Symbolic-numeric toolkit for quadratic trinomial partial differential-difference
equations  a D(f)^2 + 2 omega D(f) S(f) + b S(f)^2 = e^g  in C^n."""

__version__ = "0.1.0"

from .algebra import (
    DEFAULT_TOL,
    Poly,
    Tolerance,
    approx_eq,
    clog,
    csqrt,
    direction_decompose,
    direction_poly,
)
from .audit import FIXTURES, audit_example
from .config import format_params, parse_equation_config, parse_params
from .equation import (
    Branch,
    OmegaPair,
    TrinomialPDDE,
    Variant,
    VerificationReport,
    factorization_check,
    lhs_apply,
    m_constants,
    omega_roots,
    residual,
    verify,
    verify_numeric,
    verify_symbolic,
)
from .errors import (
    ConfigError,
    NoSolutionError,
    NonElementaryError,
    ParseError,
    TrinomialError,
    ValidationError,
    ZeroDenominatorError,
)
from .exppoly import ExpPoly, ep_exp, ep_from_poly, ep_is_zero
from .parser import format_expression, parse_expression
from .solutions import (
    CaseParameters,
    ConstraintReport,
    SolutionCandidate,
    UnivariateComponent,
    build_periodic,
    check_constraints,
    construct,
    derive_params,
    solve_split,
    solve_xi,
)

__all__ = [name for name in dir() if not name.startswith("_")]
