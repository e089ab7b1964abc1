import random

import pytest

from aodesolve.diffring import FuelExhausted
from aodesolve.parse import parse
from aodesolve.systems import (
    INCONSISTENT,
    dimension,
    is_algebraic_simple,
    is_differential_simple,
    own_dimension,
)
from aodesolve.thomas import (
    STRATEGIES,
    algebraic_decompose,
    decompose_with_constraint,
    differential_decompose,
)
from aodesolve.parse import parse_polynomial as P

from fixtures import EX35, EX52, EX53, solution_equivalent
from generators import GRID, contains, random_diff_system, random_product_system


def test_example_35_algebraic():
    dec = algebraic_decompose(parse(EX35))
    assert [s.lines() for s in dec] == [
        ["y = 0", "z'^2 + z = 0", "z /= 0"],
        ["z = 0", "z' = 0"],
    ]
    for s in dec:
        assert is_algebraic_simple(s)


def test_example_35_differential():
    dec = differential_decompose(parse(EX35))
    assert [sh.type for sh in dec.shapes] == ["I", "II", "III"]
    assert [own_dimension(s) for s in dec] == [1, 1, 0]
    for s in dec:
        assert is_differential_simple(s)


def test_example_52_decomposition():
    dec = differential_decompose(parse(EX52))
    assert len(dec) == 1
    assert solution_equivalent(dec.systems[0], parse("y^2*z^3 - 2 = 0\ny*y' - 1 = 0\ny /= 0"))


def test_example_53_decomposition():
    dec = differential_decompose(parse(EX53))
    expected = [parse("y^3 - z^5 = 0\n8*y'^3 - 27*y = 0\ny /= 0"), parse("y = 0\nz = 0")]
    assert len(dec) == 2
    for got, want in zip(dec, expected):
        assert solution_equivalent(got, want)


def test_inconsistent_input():
    assert len(differential_decompose(parse("y - 1 = 0\ny + 1 = 0"))) == 0
    assert len(differential_decompose(parse("y' = 0\ny' - 1 = 0"))) == 0
    assert len(algebraic_decompose(parse("y^2 = 0\ny /= 0"))) == 0


@pytest.mark.parametrize("src", [EX35, EX52, EX53, "y*z' - z^2 = 0\ny'^2 - z = 0"])
def test_deterministic(src):
    runs = [[s.lines() for s in differential_decompose(parse(src))] for _ in range(2)]
    assert runs[0] == runs[1]


@pytest.mark.parametrize("src", [EX35, EX53])
def test_simple_systems_are_fixed_points(src):
    for s in differential_decompose(parse(src)):
        again = differential_decompose(s)
        assert len(again) == 1 and solution_equivalent(again.systems[0], s)


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_partition_on_grid(strategy):
    rng = random.Random(11)
    for _ in range(12):
        S = random_product_system(rng)
        dec = algebraic_decompose(S, strategy=strategy)
        for p in GRID:
            hits = sum(contains(s, p) for s in dec)
            assert hits == (1 if contains(S, p) else 0), (str(S), p)


def test_dimension_does_not_grow_on_sample():
    rng = random.Random(3)
    for _ in range(15):
        S = random_diff_system(rng)
        d0 = dimension(S)
        if d0 == INCONSISTENT:
            continue
        for s in differential_decompose(S):
            assert own_dimension(s) <= d0


def test_dimension_can_grow_when_derivatives_enter():
    # reducing z' modulo the derivative of the z-equation brings in y''
    # and w', so the output lives in a larger ambient space
    S = parse("2*z*y^2 + 3*y'^2*w + y^3 = 0\nz'^3 - z'*w^2 = 0")
    assert dimension(S) == 3
    dec = differential_decompose(S)
    assert max(own_dimension(s) for s in dec) == 4


def test_primitive_split_terminates():
    dec = algebraic_decompose(parse("y + 1 = 0\n2*z*y' - z - 2*y' + 1 = 0"))
    assert [s.lines() for s in dec] == [
        ["y + 1 = 0", "z - 1 = 0"],
        ["y + 1 = 0", "2*y' - 1 = 0", "z - 1 /= 0"],
    ]


def test_fuel_cap():
    with pytest.raises(FuelExhausted):
        differential_decompose(parse(EX52), fuel=3)


def test_constraint_decomposition():
    S = differential_decompose(parse("y*y' - 1 = 0")).systems[0]
    dec = decompose_with_constraint(S, P("y^2 - 2*x"))
    assert [sh.type for sh in dec.shapes] == ["IV"]
    with pytest.raises(ValueError):
        decompose_with_constraint(S, P("y' - 1"))
