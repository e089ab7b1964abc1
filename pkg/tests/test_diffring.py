import random

import pytest
from hypothesis import given, strategies as st

from aodesolve.diffring import IrreduciblePair, derive, initial, leader, prem, reduce_step, separant
from aodesolve.parse import parse_polynomial as P
from aodesolve.poly import Polynomial, jet

from oracles import random_poly

y, z = jet("y"), jet("z")
VARS = [jet("x"), y, jet("y", 1), z, jet("z", 1)]


def test_derive_examples():
    assert derive(P("y'^2 - y")) == P("2*y'*y'' - y'")
    assert derive(P("7")) == Polynomial()
    assert derive(P("y^2 - 2*x")) == P("2*y*y' - 2")
    assert derive(P("y"), 3) == P("y'''")


def test_leader_initial_separant():
    f = P("y*z'^2 + z")
    assert leader(f) == jet("z", 1)
    assert initial(f) == P("y")
    assert separant(f) == P("2*y*z'")
    assert initial(derive(f)) == separant(f)


def test_reduce_step_examples():
    assert reduce_step(P("y''"), P("y'^2 - y")) == P("y'")
    g = P("y'^2 - y")
    assert reduce_step(g, g) == Polynomial()
    with pytest.raises(IrreduciblePair):
        reduce_step(P("y*z'"), P("z'^2 + z"))


def test_prem_examples():
    f = P("y'^2 - y")
    assert prem(f, [f]) == Polynomial()
    Q = P("y^2 - 2*x")
    assert prem(P("y*y' - 1"), [Q, derive(Q)]) == Polynomial()


@given(st.integers(0, 10**6))
def test_derive_is_a_derivation(seed):
    rng = random.Random(seed)
    a, b = random_poly(rng, VARS), random_poly(rng, VARS)
    assert derive(a * b) == derive(a) * b + a * derive(b)
    assert derive(a + b) == derive(a) + derive(b)


@given(st.integers(0, 10**6))
def test_prem_certificate(seed):
    rng = random.Random(seed)
    f = random_poly(rng, VARS + [jet("y", 2)], max_deg=3)
    gs = [g for g in (random_poly(rng, VARS, max_deg=2) for _ in range(2)) if g.jet_leader() is not None]
    rem = prem(f, gs, complete=True, track=True, fuel=2000)
    assert rem.check(f, gs)
    for g in gs:
        lv = g.jet_leader()
        r = rem.remainder
        # no occurrence of a proper derivative of a reducer's leader, and
        # the leader itself only below the reducer's degree
        assert all(w.base() != lv.base() or w.order < lv.order or (w == lv and r.degree(w) < g.degree(lv))
                   for w in r.jet_variables())
