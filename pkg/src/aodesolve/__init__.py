"""Exact algebraic and formal Puiseux series solutions of systems of
autonomous algebraic ODEs of algebraic dimension one."""
from .algsolve import (
    InitialDatumError,
    MinimalPolynomial,
    algebraic_solve,
    constant_solutions,
    shift_equivalent,
    verify_solution_polynomial,
)
from .parse import ParseError, parse, parse_file, parse_polynomial
from .poly import Polynomial, Var, X
from .puiseux import PuiseuxSeries, at_infinity_transform, newton_expand, residual_order
from .solver import (
    DimensionError,
    OrderError,
    decide_existence,
    invert_components,
    minimal_polynomial_system,
    minimal_polynomial_systems,
    series_solutions,
    shifted_system,
    simple_system_solve,
)
from .systems import DiffSystem, classify, dimension, is_algebraic_simple, is_differential_simple
from .thomas import algebraic_decompose, decompose_with_constraint, differential_decompose

__version__ = "0.1.0"
