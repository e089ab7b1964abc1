import pytest

from aodesolve.parse import parse, parse_polynomial as P
from aodesolve.poly import jet
from aodesolve.systems import (
    INCONSISTENT,
    DiffSystem,
    classify,
    dimension,
    is_algebraic_simple,
    is_differential_simple,
    own_dimension,
    strip_units,
)
from aodesolve.thomas import differential_decompose

from fixtures import EX33, EX35


def test_normalization():
    S = DiffSystem([P("0"), P("2*y - 4")], [P("3")])
    assert S.lines() == ["y - 2 = 0"]
    assert DiffSystem([], [P("0")]).inconsistent
    assert DiffSystem([P("5")]).inconsistent
    assert strip_units(P("x^2*y + x^2")) == P("y + 1")


def test_algebraic_simplicity():
    assert is_algebraic_simple(parse("y^2*z^3 - 2 = 0\ny*y' - 1 = 0\ny /= 0"))
    v = is_algebraic_simple(parse("y'^2 + y = 0\ny'*y = 0"))
    assert not v and v.reason == "repeated leader"
    assert is_algebraic_simple(DiffSystem())


def test_missing_guard_detected():
    S = parse("y^2*z^3 - 2 = 0\ny*y' - 1 = 0\ny /= 0")
    assert is_algebraic_simple(S)
    S2 = parse("z^3*y - 2 = 0\ny^2 - y = 0")
    v = is_algebraic_simple(S2)
    assert not v and "initial" in v.reason


def test_differential_simplicity():
    for s in differential_decompose(parse(EX35)).systems:
        assert is_differential_simple(s)
    v = is_differential_simple(parse("z'^2 + y = 0\n2*z'*z'' + y' = 0"))
    assert not v
    assert is_differential_simple(DiffSystem())


def test_dimension_examples():
    assert [dimension(parse(s)) for s in EX33] == [1, 1, 2]
    assert dimension(parse("y = 0")) == 0
    assert dimension(parse("y - 1 = 0\ny + 1 = 0")) == INCONSISTENT


def test_classify_examples():
    dec = differential_decompose(parse(EX35))
    assert [sh.type for sh in dec.shapes] == ["I", "II", "III"]
    assert classify(parse("y^2 - x^3 = 0\nz^5 - x^3*y = 0")).type == "IV"
    sh = classify(parse("y' = 0"))
    assert sh.type == "I" and sh.t == jet("y")


def test_free_variables_follow_universe():
    S = DiffSystem(parse("y = 0").equations, universe=[jet("y"), jet("z")])
    sh = classify(S)
    assert sh.type == "III" and sh.free == [jet("z")]


@pytest.mark.parametrize("src", [EX35, "y' = 0", "y*y' - 1 = 0\nz^2 - y = 0"])
def test_dimension_matches_shape(src):
    for s, sh in zip(*(lambda d: (d.systems, d.shapes))(differential_decompose(parse(src)))):
        expected = {"I": 1, "II": 1, "III": 0, "IV": 0}[sh.type]
        assert own_dimension(s) == expected
