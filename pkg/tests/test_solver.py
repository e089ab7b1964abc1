from fractions import Fraction

import pytest
from gmpy2 import mpq

from aodesolve.parse import parse, parse_polynomial as P
from aodesolve.poly import jet
from aodesolve.puiseux import residual_order
from aodesolve.solver import (
    DimensionError,
    decide_existence,
    degree_bound,
    invert_components,
    minimal_polynomial_system,
    minimal_polynomial_systems,
    series_solutions,
    shifted_system,
    simple_system_solve,
    triangular_branches,
)
from aodesolve.thomas import differential_decompose

from fixtures import EX35, EX52, EX53, EXISTENCE, solution_equivalent

y, z = jet("y"), jet("z")


@pytest.fixture(scope="module")
def out52():
    return simple_system_solve(parse(EX52))


@pytest.fixture(scope="module")
def out53():
    return simple_system_solve(parse(EX53))


def test_example_52(out52):
    (s,) = out52.systems
    assert s.shape.type == "IV" and s.shift_family
    assert solution_equivalent(s.system, parse("y^2 - 2*x = 0\nx*z^3 - 1 = 0"), differential=False)
    (mp,) = s.minpoly
    assert [str(q) for _, q in mp.polys] == ["y^2 - 2*x", "z^3*x - 1"]
    assert mp.bound == 6 and mp.within_bound()


def test_example_53(out53):
    types = [s.shape.type for s in out53.systems]
    assert types == ["III", "IV"]
    iv = out53.of_type("IV")[0]
    assert solution_equivalent(iv.system, parse("y^2 - x^3 = 0\nz^5 - x^3*y = 0"), differential=False)
    (mp,) = iv.minpoly
    assert mp.polys[1][1] == P("z^10 - x^9")
    assert mp.bound == 20 and mp.degrees() == [2, 10]
    assert mp.count == 10


def test_solutions_satisfy_input(out52, out53):
    for src, out in ((EX52, out52), (EX53, out53)):
        S = parse(src)
        for s in out.systems:
            for c in (0, 1, mpq(-3, 2)):
                H = shifted_system(s.system, c) if s.shift_family else s.system
                for tup in series_solutions(H, 20):
                    assert residual_order(S, tup.completed(S.universe), 12).passed


def test_spurious_root_pair():
    S = parse(EX53)
    tuples = triangular_branches(parse("y^2 - x^3 = 0\nz^10 - x^9 = 0"), 12)
    verdicts = [residual_order(S, t.completed(S.universe), 5).verdict for t in tuples]
    assert "fail" in verdicts and "pass" in verdicts
    genuine = triangular_branches(parse("y^2 - x^3 = 0\nz^5 - x^3*y = 0"), 12)
    assert all(residual_order(S, t.completed(S.universe), 12).passed for t in genuine)
    assert sum(t.count for t in genuine) == 10


def test_minpoly_single():
    mp = minimal_polynomial_system(parse("y - x^2 = 0"))
    assert [str(q) for _, q in mp.polys] == ["y - x^2"]
    (mp,) = minimal_polynomial_systems(parse("y^2 - 2*x = 0\nz*y - 1 = 0"))
    assert mp.polys[1][1] == P("2*z^2*x - 1")


def test_degree_bound():
    S = differential_decompose(parse(EX53)).systems[0]
    assert degree_bound(S, y) == 20


def test_dimension_guard():
    with pytest.raises(DimensionError):
        simple_system_solve(parse("y'' - y = 0"))
    with pytest.raises(DimensionError):
        simple_system_solve(parse("y = 0\nz = 0\nw' = 0\nw = 1"))


def test_all_constants_family():
    out = simple_system_solve(parse("y*y' = 0"))
    assert any(s.shape.type == "II" for s in out.systems)


def test_shifted_system():
    H = parse("y^2 - 2*x = 0\nz^3*x - 1 = 0")
    assert shifted_system(H, 1).lines() == ["y^2 - 2*x - 2 = 0", "z^3*x + z^3 - 1 = 0"]
    assert shifted_system(H, 0) == H
    with pytest.raises(TypeError):
        shifted_system(H, P("y"))
    with pytest.raises(TypeError):
        shifted_system(H, "1")


@pytest.mark.parametrize("src,verdict", EXISTENCE)
def test_existence(src, verdict):
    assert decide_existence(parse(src)).verdict == verdict


def test_existence_witness():
    v = decide_existence(parse("y - 1 = 0\nz*y - z = 0"))
    assert v.witness is not None and v.witness.free_variables() == [z]
    with pytest.raises(DimensionError):
        decide_existence(parse("y'' = 0"))


def test_inversion_roundtrip():
    S = parse("y*y' - 1 = 0")
    inv = invert_components(S, [1])
    assert inv.lines() == ["y' + y^3 = 0"]
    assert invert_components(inv, ["y"]) == S
    # monomial factors in the inverted components are units away from 0 and dropped
    assert invert_components(parse(EX35), [y, z]).lines() == ["z' = 0", "z'^2 + z^3 = 0"]


def test_inversion_of_series():
    # 1/y of a solution with negative order is a solution of the inverted system
    S = parse("x*y - 1 = 0")
    inv = invert_components(S, [1])
    (t,) = series_solutions(inv, 6)
    assert t.values[y].valuation() == Fraction(1)
