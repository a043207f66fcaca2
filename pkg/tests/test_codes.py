import json

import pytest

from gridcover.codes import (CodePreset, CodeSpecError, ColoringFamily, FamilySpec, PresetKind,
                             PresetRejected, default_preset, end_to_end, family_cycle, family_specs,
                             generate_code, printed_table, table_deviations, theorem_table)
from gridcover.label_core import Coloring
from gridcover.lattice import fold_profile, manhattan_ball_size, project_ball, verify_code


def pairs(r, fam, variant=None):
    return [(row.a, row.b) for row in theorem_table(r)
            if row.family == fam and row.variant == variant]


@pytest.mark.parametrize("r", range(2, 9))
def test_family_cycles_are_folds(r):
    for spec in family_specs(r):
        cycle = family_cycle(spec)
        assert cycle.values() == fold_profile(project_ball(r, 1), cycle.p).values()
        assert sum(cycle.values()) == manhattan_ball_size(r)


def test_family_cycle_examples():
    assert family_cycle(FamilySpec(1, 2)).values() == [3, 5, 5]
    c = family_cycle(FamilySpec(2, 4))
    assert c.p == 8 and c.word == "zxyxtxyx"
    assert c.values() == [5, 4, 5, 4, 10, 4, 5, 4]
    assert family_cycle(FamilySpec(5, 3, "three")).values() == [11, 7, 7]


def test_family_spec_constraints():
    with pytest.raises(CodeSpecError, match="2r\\+1"):
        FamilySpec(4, 3)
    with pytest.raises(CodeSpecError):
        FamilySpec(5, 3)
    with pytest.raises(CodeSpecError):
        FamilySpec(1, 1)
    assert FamilySpec("coloring4", 4).family == ColoringFamily.COLORING4


def test_table_examples():
    c1 = [row for row in theorem_table(2) if row.family == 1]
    assert [(r.a, r.b, r.alpha, r.in_theorem_scope) for r in c1] == [(3, 5, 0, False), (8, 10, 1, False)]
    assert pairs(4, 2) == [(18, 23)]
    assert pairs(4, 4) == [(27, 28)]
    assert pairs(4, 5, "two") == [(25, 16)]
    assert (25, 16) in pairs(4, 3)


@pytest.mark.parametrize("r", range(2, 9))
def test_scope_flag(r):
    for row in theorem_table(r):
        assert row.in_theorem_scope == (abs(row.a - row.b) > 4)
        assert 0 <= row.a <= manhattan_ball_size(r) and 0 <= row.b <= manhattan_ball_size(r)


@pytest.mark.parametrize("r", range(2, 9))
def test_two_periodic_matches_coloring3_alternate(r):
    assert pairs(r, 5, "two")[0] in pairs(r, 3)


@pytest.mark.parametrize("r", range(2, 10))
def test_printed_table_deviations(r):
    devs = table_deviations(r)
    if r % 3 == 0:
        assert {d["family"] for d in devs} == {"Coloring5"}
        assert len(devs) == 4
        derived = sorted(d["a"] - int(d["b"]) for d in devs if d["side"] == "derived")
        printed = sorted(int(d["a"]) - int(d["b"]) for d in devs if d["side"] == "printed")
        assert [x - y for x, y in zip(derived, printed)] == [2, 2]
    else:
        assert devs == []


def test_printed_table_has_coloring5_rows():
    assert len([t for t in printed_table(4) if t[0] == 5]) == 3


def test_generate_examples():
    code = generate_code(FamilySpec(2, 4), CodePreset(PresetKind.HALF_BLACK))
    assert code.coloring.pattern.colors.bits() == "11110000"
    assert (code.a, code.b) == (18, 23)
    code = generate_code(FamilySpec(4, 4), CodePreset(PresetKind.THREE_PATTERN))
    assert code.coloring.pattern.colors.bits() == "110" * 3
    code = generate_code(FamilySpec(1, 2), CodePreset(PresetKind.INITIAL_BLOCK, 0))
    for x1 in range(6):
        for x2 in range(6):
            assert code.coloring.color(x1, x2) == ((x1 - x2) % 3 == 0)


def test_generate_rejects_bad_preset():
    bad = CodePreset(PresetKind.EXPLICIT, coloring=Coloring.parse("11010000"))
    with pytest.raises(PresetRejected) as exc:
        generate_code(FamilySpec(2, 4), bad)
    assert exc.value.witness["pattern"] == "11010000"
    assert len(exc.value.witness["rotations"]) == 2
    with pytest.raises(CodeSpecError):
        generate_code(FamilySpec(2, 4), CodePreset(PresetKind.EXPLICIT, coloring=Coloring.parse("10")))


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_generated_code_constants_agree_with_lattice(r):
    for row in theorem_table(r):
        code = generate_code(FamilySpec(row.family, r, row.variant), default_preset(row))
        rep = verify_code(code.coloring, r)
        assert (rep.a, rep.b) == (code.a, code.b) == (row.a, row.b)


@pytest.mark.parametrize("r", [2, 4, 7])
def test_end_to_end(r):
    rep = end_to_end(r)
    assert rep.ok
    d = json.loads(rep.to_json())
    assert d["ok"] and len(d["rows"]) == len(theorem_table(r))
    lines = rep.to_csv().splitlines()
    assert lines[0].startswith("family,variant,alpha,r,preset")
    assert len(lines) == len(rep.rows) + 1


def test_end_to_end_examples():
    got = {(row.family, row.a, row.b, row.in_scope) for row in end_to_end(4).rows}
    assert ("Coloring2", 18, 23, True) in got
    assert ("Coloring4", 27, 28, False) in got
    r2 = {(row.a, row.b) for row in end_to_end(2).rows}
    assert {(3, 5), (8, 10), (5, 8), (9, 4)} <= r2


def test_end_to_end_bound():
    with pytest.raises(CodeSpecError):
        end_to_end(9)
    assert end_to_end(9, max_r=9).ok
