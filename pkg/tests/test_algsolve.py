import random

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from aodesolve.algsolve import (
    InitialDatumError,
    algebraic_solve,
    constant_solutions,
    regular_datum,
    shift_equivalent,
    verify_solution_polynomial,
)
from aodesolve.factor import factor
from aodesolve.parse import parse_polynomial as P
from aodesolve.poly import Polynomial, X, jet

from oracles import autonomous_equation

y = jet("y")
yp = jet("y", 1)


def _shift(Q, c):
    return Q.subs({X: Polynomial.variable(X) + Polynomial.constant(mpq(c))})


@pytest.mark.parametrize("F,Q", [
    ("y*y' - 1", "y^2 - 2*x"),
    ("8*y'^3 - 27*y", "y^2 - x^3"),
    ("y' - 1", "y - x"),
])
def test_examples(F, Q):
    got = algebraic_solve(P(F))
    assert got is not None
    assert shift_equivalent(got, P(Q)) is not None
    assert verify_solution_polynomial(P(F), got.poly)


def test_exponential_has_no_algebraic_solution():
    assert algebraic_solve(P("y' - y")) is None
    assert algebraic_solve(P("y'^2 - y^2 - 1")) is None


def test_errors():
    with pytest.raises(ValueError):
        algebraic_solve(P("y^2 - 1"))
    with pytest.raises(ValueError):
        algebraic_solve(P("y' - x"))
    with pytest.raises(InitialDatumError):
        regular_datum(P("y'^2 + y^2 + 1"), y, cap=1)


def test_constant_solutions():
    assert constant_solutions(P("8*y'^3 - 27*y")) == P("y")
    assert constant_solutions(P("y*y' - 1")) == P("1")
    assert constant_solutions(P("y'^2 - y^2 + 1")) == P("y^2 - 1")
    assert constant_solutions(P("y'*y")) == Polynomial()
    assert constant_solutions(P("y' + y^3 - y^2")) == P("y^2 - y")


def test_verify_solution_polynomial():
    assert verify_solution_polynomial(P("y*y' - 1"), P("y^2 - 2*x"))
    assert not verify_solution_polynomial(P("y*y' - 1"), P("y - x"))
    for c in (0, 3, mpq(-1, 2)):
        assert verify_solution_polynomial(P("y'"), P("y") - Polynomial.constant(mpq(c)), y)


def test_shift_equivalent():
    Q = P("y^2 - 2*x")
    # Q(x, y) = Q2(x + c, y) with Q2 = y^2 - 2x - 2 forces c = -1
    assert shift_equivalent(Q, P("y^2 - 2*x - 2")) == -1
    assert shift_equivalent(P("y^2 - 2*x - 2"), Q) == 1
    assert shift_equivalent(Q, Q) == 0
    assert shift_equivalent(Q, P("y^2 - x^3")) is None
    assert shift_equivalent(Q, P("3*y^2 - 6*x + 3")) == mpq(1, 2)
    assert shift_equivalent(P("y^2 - x^2"), P("y^2 - x^2 - 1")) is None


CORPUS = ["y^2 - x", "y^3 - x^2", "x*y - 1", "x^2 + y^2 - 1", "y^3 + x*y - 1",
          "y^2 - 2*x", "x*y^2 - y - 1", "y^2 - x^3 - x", "x^2*y - y^2 - 1"]


@pytest.mark.parametrize("q", CORPUS)
def test_completeness_corpus(q):
    Q = P(q)
    F = autonomous_equation(Q, y)
    factors = [g for g, _ in factor(F).factors if g.degree(yp) > 0]
    (G,) = [g for g in factors if verify_solution_polynomial(g, Q, y)]
    got = algebraic_solve(G, y)
    assert got is not None and shift_equivalent(Q, got.poly, y) is not None
    assert got.x_degree == G.degree(yp)
    assert got.y_degree <= G.degree(y) + G.degree(yp)


@pytest.mark.parametrize("q,c", [("x^2 + y^2 - 1", 3), ("y^3 - x^2", mpq(-5, 2)), ("x*y - 1", 7)])
def test_shifted_input_recovers_family(q, c):
    Q = _shift(P(q), c)
    F = autonomous_equation(Q, y)
    G = next(g for g, _ in factor(F).factors if verify_solution_polynomial(g, Q, y))
    got = algebraic_solve(G, y)
    assert shift_equivalent(Q, got.poly, y) is not None


@pytest.fixture(scope="module")
def solved():
    return [(P(F), algebraic_solve(P(F)).poly) for F in ("y*y' - 1", "8*y'^3 - 27*y", "y' + y^2")]


@given(c=st.fractions(min_value=-20, max_value=20, max_denominator=6))
def test_shift_covariance(solved, c):
    c = mpq(c.numerator, c.denominator)
    for F, Q in solved:
        shifted = _shift(Q, c)
        assert verify_solution_polynomial(F, shifted)
        assert shift_equivalent(shifted, Q) == c


def test_degree_invariants_random():
    rng = random.Random(5)
    checked = 0
    for _ in range(12):
        a, b = rng.randint(1, 3), rng.randint(1, 3)
        Q = P(f"y^{a} - x^{b}") + Polynomial.constant(mpq(rng.randint(-2, 2)))
        F = autonomous_equation(Q, y)
        for g, _ in factor(F).factors:
            if g.degree(yp) < 1:
                continue
            got = algebraic_solve(g, y)
            if got is None:
                continue
            checked += 1
            assert verify_solution_polynomial(g, got.poly, y)
            assert got.x_degree == g.degree(yp)
            assert got.y_degree <= g.degree(y) + g.degree(yp)
    assert checked >= 10
