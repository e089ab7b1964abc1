import random

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from aodesolve.factor import adjoin_root, factor_over, norm, roots_in_field
from aodesolve.numberfield import AlgNum, ExtensionCapError, NumberField
from aodesolve.parse import parse_polynomial as P
from aodesolve.poly import Polynomial, jet

y = jet("y")
SQRT2 = NumberField([-2, 0, 1])


def test_field_arithmetic():
    a = SQRT2.gen
    assert a * a == 2
    assert (1 + a) * (a - 1) == 1
    assert (1 + a).inverse() == a - 1
    assert a ** 4 == 4


@given(st.lists(st.integers(-9, 9), min_size=3, max_size=3), st.lists(st.integers(-9, 9), min_size=3, max_size=3))
def test_field_inverse_and_distributivity(u, v):
    K = NumberField([-2, 0, 0, 1])  # cube root of 2
    a, b = K.element(u), K.element(v)
    if a:
        assert a * (1 / a) == 1
        assert (b / a) * a == b
    assert (a + b) * (a - b) == a * a - b * b


def test_factor_over_extension_splits():
    facs = factor_over(P("y^2 - 2"), SQRT2)
    assert len(facs) == 2 and all(f.degree(y) == 1 for f, _ in facs)
    assert len(factor_over(P("y^2 - 3"), SQRT2)) == 1


def test_norm_recovers_rational_polynomial():
    a = SQRT2.gen
    p = Polynomial.variable(y) - Polynomial.constant(a)
    assert norm(p, SQRT2) == P("y^2 - 2")


def test_adjoin_root_towers_collapse():
    ext = adjoin_root(P("y^2 - 3"), y, SQRT2)
    assert ext.field.degree == 4
    r = ext.root
    assert r * r == 3
    s2 = ext.embed(SQRT2.gen)
    assert s2 * s2 == 2


def test_adjoin_root_cap():
    with pytest.raises(ExtensionCapError):
        adjoin_root(P("y^3 - 3"), y, SQRT2, cap=4)


def test_roots_in_field():
    roots = roots_in_field(P("y^3 - 2*y"), y, SQRT2)
    assert sorted(str(r) for r, _ in roots) == sorted(["0", str(SQRT2.gen), str(-SQRT2.gen)])


@given(st.integers(0, 10**6))
def test_factor_over_product(seed):
    rng = random.Random(seed)
    a = SQRT2.gen
    f = Polynomial.variable(y) - Polynomial.constant(rng.randint(-3, 3) + rng.randint(-2, 2) * a)
    g = Polynomial.variable(y) ** 2 + Polynomial.constant(mpq(rng.randint(1, 5)))
    facs = factor_over(f * g, SQRT2)
    prod = Polynomial.constant(mpq(1))
    for h, m in facs:
        prod = prod * h ** m
    assert prod.monic() == (f * g).monic()
