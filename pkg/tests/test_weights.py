from fractions import Fraction

import pytest

from gridcover.weights import T, X, Y, Z, RelationError, RelationSet, WeightExpr, wsum


def test_parse_and_str_round_trip():
    e = WeightExpr.parse("z+2x-1/2y+3")
    assert e.coefficient("z") == 1
    assert e.coefficient("x") == 2
    assert e.coefficient("y") == Fraction(-1, 2)
    assert e.const == 3
    assert WeightExpr.parse(str(e)) == e
    assert str(Z + 2 * X) == "z+2x"
    assert str(WeightExpr.zero()) == "0"


@pytest.mark.parametrize("bad", ["", "2q", "z++x", "x*"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        WeightExpr.parse(bad)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        WeightExpr.constant(0.5)
    with pytest.raises(TypeError):
        X * 0.5


def test_arithmetic_is_exact():
    e = Fraction(1, 3) * X + Fraction(2, 3) * X
    assert e == X
    assert wsum([Z, X, X, -Z]) == 2 * X
    assert (Z - Z).is_constant and not (Z - Z)


def test_evaluate_and_substitute():
    e = Z + 3 * X - T
    assert e.evaluate({"z": 1, "x": 2, "t": 4}) == 3
    s = e.substitute({"x": Fraction(1, 3)})
    assert s == Z - T + WeightExpr.constant(1)


def test_special_t_relation_reduces_t():
    rel = RelationSet((4 * T - 8 * X + 4 * Y,))
    assert rel.eliminated == ("t",)
    assert rel.reduce(T) == 2 * X - Y
    assert rel.reduce(Z + T) == Z + 2 * X - Y
    assert rel.reduce(T).reduced


def test_echelon_back_substitution():
    rel = RelationSet((T - Y, Y - 2 * X))
    assert rel.reduce(T) == 2 * X
    assert rel.reduce(T + Y) == 4 * X


def test_redundant_relation_rejected():
    with pytest.raises(RelationError):
        RelationSet((T - X, 2 * T - 2 * X))


def test_inequations():
    rel = RelationSet((T - X,), (("x", "t"), ("x", "y")))
    assert rel.violated_inequations() == [("x", "t")]
    assert rel.violated_inequations({"x": 1, "y": 1}) == [("x", "t"), ("x", "y")]
    assert RelationSet((), (("x", "y"),)).violated_inequations({"x": 1, "y": 2}) == []
