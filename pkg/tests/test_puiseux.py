import random
from fractions import Fraction

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, strategies as st

from aodesolve.parse import parse, parse_polynomial as P
from aodesolve.poly import Polynomial, X, jet
from aodesolve.puiseux import (
    PuiseuxSeries,
    at_infinity_transform,
    hensel_root,
    newton_expand,
    ode_series_solution,
    residual_order,
    substitute,
)

from oracles import sym, to_expr

y, z = jet("y"), jet("z")
xs = sympy.Symbol("x")


def _sympy_residual_valuation(H, series, e):
    """Valuation in x of H(x, series) computed with sympy on x = t^e."""
    t = sympy.Symbol("t", positive=True)
    s = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * t ** int(q * e)
            for q, c in series.terms.items())
    expr = to_expr(H).subs({sym(X): t ** e, sym(y): s})
    poly = sympy.Poly(sympy.expand(expr), t)
    low = min(m[0] for m in poly.monoms()) if not poly.is_zero else None
    return None if low is None else Fraction(low, e)


def test_newton_cusp():
    branches = newton_expand(P("y^2 - x^3"), y, N=6)
    assert [str(b.series) for b in branches] == ["-x^(3/2) + O(x^6)", "x^(3/2) + O(x^6)"]
    assert sum(b.count * b.multiplicity for b in branches) == 2


def test_newton_extension_branch():
    (b,) = newton_expand(P("y^2 - 2*x"), y, N=4)
    assert b.count == 2 and b.field is not None
    assert b.series.valuation() == Fraction(1, 2)
    c = b.series.leading_coefficient()
    assert c * c == 2


def test_newton_multiplicity():
    branches = newton_expand(P("(y - x)^2*(y + 1)"), y, N=4)
    assert sorted((str(b.series), b.multiplicity) for b in branches) == [
        ("-1 + O(x^4)", 1), ("x + O(x^4)", 2)]


@pytest.mark.parametrize("h", ["y^3 - x^2 - x^3*y", "y^2 - x^2 - x^3", "x*y^2 - y - x^2", "y^3 - 3*x*y + x^3"])
def test_newton_residuals_against_sympy(h):
    H = P(h)
    N = 5
    branches = newton_expand(H, y, N=N)
    assert sum(b.count * b.multiplicity for b in branches) == H.degree(y)
    for b in branches:
        if b.field is not None:
            continue
        val = _sympy_residual_valuation(H, b.series, b.series.ramification)
        # the truncation error is scaled by dH/dy, which is a unit or small here
        assert val is None or val >= N, (str(b.series), val)


def test_newton_at_infinity():
    branches = newton_expand(P("x*y - 1 - x"), y, "inf", N=4)
    assert len(branches) == 1
    s = branches[0].series
    assert s.point == "inf" and str(s) == "1 + x^(-1) + O(x^(-4))"


def test_ode_series_binomial():
    s = ode_series_solution(P("2*y*y' - 1"), mpq(1), mpq(1, 2), 8)
    ref = sympy.series(sympy.sqrt(1 + xs), xs, 0, 8).removeO()
    for k in range(8):
        c = ref.coeff(xs, k)
        assert s.terms.get(Fraction(k), 0) == mpq(int(c.p), int(c.q))


def test_ode_series_exponential():
    s = ode_series_solution(P("y' - y"), mpq(2), mpq(2), 9)
    for k in range(9):
        assert s.terms[Fraction(k)] == mpq(2, int(sympy.factorial(k)))
    assert s.prec == 9


def test_ode_series_rejects_bad_data():
    with pytest.raises(ValueError):
        ode_series_solution(P("y' - y"), mpq(1), mpq(2), 4)
    with pytest.raises(ValueError):
        ode_series_solution(P("y'^2 - y"), mpq(0), mpq(0), 4)


def test_derivative_and_arithmetic():
    s = PuiseuxSeries({Fraction(3, 2): mpq(1), Fraction(2): mpq(3)}, 5)
    d = s.derivative()
    assert d.terms == {Fraction(1, 2): mpq(3, 2), Fraction(1): mpq(6)}
    assert d.prec == 4
    one = PuiseuxSeries.from_coefficients([mpq(1), mpq(1)], order=6)
    inv = one.inverse()
    assert (one * inv).truncate(6).terms == {Fraction(0): mpq(1)}
    assert inv.terms[Fraction(5)] == -1
    inf = PuiseuxSeries.variable("inf")
    assert inf.derivative().terms == {Fraction(0): mpq(1)}


def test_substitute_matches_sympy():
    s = PuiseuxSeries({Fraction(1, 2): mpq(1), Fraction(1): mpq(-2)}, 4)
    r = substitute(P("x*y^2 + 3*y - 1"), {y: s})
    t = sympy.Symbol("t", positive=True)
    ref = sympy.expand(t ** 2 * (t - 2 * t ** 2) ** 2 + 3 * (t - 2 * t ** 2) - 1)
    for q, c in r.terms.items():
        assert c == ref.coeff(t, int(q * 2)) if q else c == ref.subs(t, 0)
    assert r.prec == 4


def test_residual_exact_solution():
    (yb,) = newton_expand(P("y^2 - 2*x"), y, N=14)
    rep = residual_order(parse("y^2 - 2*x = 0"), {y: yb.series}, 12)
    assert rep.passed and rep.entries[0].valuation is None


def test_residual_spurious_pair():
    S = parse("8*y'^3 - 27*y = 0\nz^5 - y^3 = 0\n5*z^4*z' - 3*y^2*y' = 0")
    ys = PuiseuxSeries({Fraction(3, 2): mpq(1)}, 20)
    zs = PuiseuxSeries({Fraction(9, 10): mpq(-1)}, 20)
    rep = residual_order(S, {y: ys, z: zs}, 5)
    assert rep.verdict == "fail"
    last = rep.entries[-1]
    assert last.member == P("5*z^4*z' - 3*y^2*y'") and last.valuation == Fraction(7, 2)
    good = residual_order(S, {y: ys, z: -zs}, 5)
    assert good.passed


def test_residual_inconclusive_and_inequation():
    S = parse("y - x = 0\ny /= 0")
    short = PuiseuxSeries({Fraction(1): mpq(1)}, 2)
    rep = residual_order(S, {y: short}, 5)
    assert rep.verdict == "inconclusive"
    rep = residual_order(S, {y: PuiseuxSeries.variable()}, 5)
    assert rep.passed


def test_at_infinity_transform():
    T = at_infinity_transform(parse("y' + y^2 = 0"))
    assert T.lines() == ["y'*x^2 - y^2 = 0"]
    T = at_infinity_transform(parse("y'' - y = 0"))
    assert T.lines() == ["y''*x^4 + 2*y'*x^3 - y = 0"]


def test_hensel_root():
    xval = PuiseuxSeries.variable()
    r = hensel_root(P("y^2 - z - 1"), y, {z: xval}, mpq(1), 6)
    ref = sympy.series(sympy.sqrt(1 + xs), xs, 0, 6).removeO()
    for k in range(6):
        c = ref.coeff(xs, k)
        assert r.terms.get(Fraction(k), 0) == mpq(int(c.p), int(c.q))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.integers(1, 3))
def test_product_then_inverse(coeffs, e):
    if coeffs[0] == 0:
        coeffs[0] = 1
    s = PuiseuxSeries.from_coefficients([mpq(c) for c in coeffs], e=e, order=8)
    prod = (s * s.inverse()).truncate(Fraction(8 - 1, e))
    assert prod.terms == {Fraction(0): mpq(1)}


@given(st.integers(0, 10 ** 6))
def test_derivative_is_linear(seed):
    rng = random.Random(seed)
    a = PuiseuxSeries({Fraction(rng.randint(0, 6), 2): mpq(rng.randint(-4, 4)) for _ in range(3)}, 5)
    b = PuiseuxSeries({Fraction(rng.randint(0, 6), 3): mpq(rng.randint(-4, 4)) for _ in range(3)}, 5)
    assert (a + b).derivative() == a.derivative() + b.derivative()
    assert (a * b).derivative().truncate(3) == (a.derivative() * b + a * b.derivative()).truncate(3)
