import pytest

from gridcover.cycles import (CycleFamily, CycleSpec, CycleSpecError, StructureTag, build_cycle,
                              complement_closure, cross_check, family_word, pattern_class,
                              predicted_rows, printed_rows, table_deviations, valid_ps)
from gridcover.label_core import Coloring, EnumerationBoundError
from gridcover.weights import WeightExpr

P = WeightExpr.parse


def test_family_words():
    assert family_word(CycleFamily.TYPE1, 4) == "zxxx"
    assert family_word(CycleFamily.TYPE2, 6) == "zxxtxx"
    assert family_word(CycleFamily.TYPE3, 5) == "zxyxy"
    assert family_word(CycleFamily.TYPE4, 6) == "zxyxyx"
    assert family_word(CycleFamily.TYPE5, 9) == "zxyxyyxyx"
    assert family_word(CycleFamily.TYPE6, 7) == "zxyxxyx"
    assert family_word(CycleFamily.TYPE7, 10) == "zxyxytyxyx"
    assert family_word(CycleFamily.TYPE8, 8) == "zxyxtxyx"
    for fam in CycleFamily:
        for p in valid_ps(fam, 14):
            w = family_word(fam, p)
            assert len(w) == p and w[0] == "z"
            # all families but the alternating odd one are mirror symmetric
            if fam != CycleFamily.TYPE3:
                assert w[1:] == w[1:][::-1]


@pytest.mark.parametrize("fam,p", [(2, 5), (2, 2), (3, 4), (4, 7), (5, 7), (6, 3), (6, 9),
                                   (7, 8), (8, 4), (8, 10)])
def test_congruence_constraints(fam, p):
    with pytest.raises(CycleSpecError):
        CycleSpec(fam, p).validate()


def test_concrete_inequations():
    with pytest.raises(CycleSpecError, match="x != y"):
        CycleSpec(4, 6, {"z": 1, "x": 2, "y": 2}).validate()
    with pytest.raises(CycleSpecError):
        CycleSpec(3, 5, special_t=True).validate()


def test_special_t_concrete_value_is_derived():
    spec = CycleSpec(8, 8, {"z": 1, "x": 3, "y": 5}, special_t=True)
    assert spec.weight_values()["t"] == 1  # 2x - y
    with pytest.raises(CycleSpecError):
        CycleSpec(8, 8, {"z": 1, "x": 3, "y": 5, "t": 4}, special_t=True).weight_values()


def test_pattern_class():
    pc = pattern_class(Coloring.parse("1100"))
    assert 4 in pc.periods and 2 in pc.antiperiods and not pc.is_alternate
    assert pattern_class(Coloring.parse("1010")).is_alternate
    assert StructureTag("pattern", pattern="110").holds(Coloring.parse("011011"))
    assert StructureTag("balanced").holds(Coloring.parse("1100"))
    assert not StructureTag("balanced").holds(Coloring.parse("1010"))


def test_type1_rows():
    rows = predicted_rows(CycleSpec(1, 4))
    assert [r.pair() for r in rows] == [(P("z"), P("x")), (P("z+x"), P("2x")), (P("z+2x"), P("3x"))]
    assert [r.alpha for r in rows] == [0, 1, 2]


def test_special_t_rows_are_reduced():
    rows = predicted_rows(CycleSpec(8, 12, special_t=True))
    assert all(r.a.coefficient("t") == 0 and r.b.coefficient("t") == 0 for r in rows)
    assert (P("z+2y"), P("3x")) in [r.pair() for r in rows]


def test_printed_ranges_keep_the_all_black_instance():
    spec = CycleSpec(7, 10)
    extra = [r for r in printed_rows(spec) if r not in predicted_rows(spec)]
    assert len(extra) == 1 and extra[0].black_count() == 10
    assert table_deviations(spec)[0]["reason"].startswith("instance is the all-black")


def test_complement_closure_type5():
    spec = CycleSpec(5, 9)
    rows = predicted_rows(spec)
    assert [r.pair() for r in rows] == [(P("z+3x+2y"), P("2x+4y"))]
    closed = complement_closure(rows, build_cycle(spec).total(), 9)
    assert (P("z+2x"), P("x+2y")) in [r.pair() for r in closed]


@pytest.mark.parametrize("fam,p,st", [(1, 5, False), (2, 8, False), (3, 9, False), (4, 8, False),
                                      (5, 9, False), (6, 11, False), (7, 10, False),
                                      (8, 8, False), (8, 12, True)])
def test_cross_check_symbolic(fam, p, st):
    rep = cross_check(CycleSpec(fam, p, special_t=st))
    assert rep.match, rep.discrepancies
    assert rep.structure_ok


@pytest.mark.parametrize("fam,p,vals", [(1, 5, {"z": 3, "x": 5}), (4, 6, {"z": 9, "x": 4, "y": 6}),
                                        (8, 8, {"z": 5, "x": 4, "y": 5, "t": 10})])
def test_cross_check_concrete(fam, p, vals):
    rep = cross_check(CycleSpec(fam, p, vals))
    assert rep.match and rep.structure_ok


def test_cross_check_report_serializes():
    d = cross_check(CycleSpec(2, 6)).to_dict()
    assert d["match"] and d["family"] == 2 and d["mode"] == "symbolic"


def test_cross_check_bound():
    with pytest.raises(EnumerationBoundError):
        cross_check(CycleSpec(1, 6), bound=5)
