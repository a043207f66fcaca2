"""(r,a,b)-codes of Z^2 built from diagonal colorings.

Each of the five coloring families folds the ball B_r onto a small weighted
cycle.  The code constants are read off the cycle classification, and every
generated code is checked again directly on the lattice.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import os
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from .cycles import (CycleFamily, CycleSpec, WeightedCycle, build_cycle, predicted_rows,
                     rotation_instance)
from .label_core import Coloring, classify_labelling
from .lattice import (LinePattern, Orientation, build_diagonal_coloring, fold_profile,
                      project_ball, verify_code)


class CodeSpecError(ValueError):
    pass


class PresetRejected(ValueError):
    def __init__(self, message: str, witness: Optional[dict] = None):
        super().__init__(message)
        self.witness = witness or {}


class ColoringFamily(enum.IntEnum):
    COLORING1 = 1
    COLORING2 = 2
    COLORING3 = 3
    COLORING4 = 4
    COLORING5 = 5

    @classmethod
    def parse(cls, value) -> "ColoringFamily":
        if isinstance(value, ColoringFamily):
            return value
        text = str(value).lower().replace("coloring", "").strip()
        try:
            return cls(int(text))
        except ValueError:
            raise CodeSpecError(f"unknown coloring family {value!r} (expected 1..5)") from None

    def __str__(self) -> str:
        return f"Coloring{int(self)}"


VARIANTS = ("two", "three")


@dataclass(frozen=True)
class FamilySpec:
    family: ColoringFamily
    r: int
    variant: Optional[str] = None  # Coloring 5 only: "two" or "three"

    def __post_init__(self):
        object.__setattr__(self, "family", ColoringFamily.parse(self.family))
        if self.r < 2:
            raise CodeSpecError(f"radius must be at least 2 (got r={self.r})")
        if self.family == ColoringFamily.COLORING5:
            v = (self.variant or "").lower()
            if v not in VARIANTS:
                raise CodeSpecError("Coloring 5 needs variant 'two' or 'three'")
            object.__setattr__(self, "variant", v)
        elif self.variant is not None:
            raise CodeSpecError(f"{self.family} has no variants")
        if self.family == ColoringFamily.COLORING4 and (2 * self.r + 1) % 3 != 0:
            raise CodeSpecError(
                f"Coloring 4 requires 2r+1 = 0 (mod 3) (got r={self.r}, 2r+1={2 * self.r + 1})")

    def label(self) -> str:
        return str(self.family) + (f"/{self.variant}" if self.variant else "")


def family_specs(r: int) -> list:
    """All valid family specs at radius r, in canonical order."""
    out = []
    for fam in ColoringFamily:
        variants = VARIANTS if fam == ColoringFamily.COLORING5 else (None,)
        for v in variants:
            try:
                out.append(FamilySpec(fam, r, v))
            except CodeSpecError:
                pass
    return out


def _cycle_spec(spec: FamilySpec) -> CycleSpec:
    """Cycle family and weight values for the fold of B_r along (1,1)."""
    r, fam = spec.r, spec.family
    even = r % 2 == 0
    if fam == ColoringFamily.COLORING1:
        if even:
            return CycleSpec(CycleFamily.TYPE1, r + 1, {"z": r + 1, "x": 2 * r + 1})
        return CycleSpec(CycleFamily.TYPE1, r, {"z": 3 * r + 2, "x": 2 * r + 1})
    if fam == ColoringFamily.COLORING2:
        if r == 2:
            # p = 4 is below the Type 8 range; the fold is the Type 2 cycle z x t x
            return CycleSpec(CycleFamily.TYPE2, 4, {"z": 3, "x": 2, "t": 6})
        if even:
            return CycleSpec(CycleFamily.TYPE8, 2 * r,
                             {"z": r + 1, "y": r + 1, "x": r, "t": 2 * (r + 1)})
        return CycleSpec(CycleFamily.TYPE8, 2 * (r + 1), {"z": r, "y": r, "x": r + 1, "t": 0})
    if fam == ColoringFamily.COLORING3:
        if r == 2:
            # p = 2 is below the Type 4 range; the fold is the Type 1 cycle C_2
            return CycleSpec(CycleFamily.TYPE1, 2, {"z": 9, "x": 4})
        if even:
            return CycleSpec(CycleFamily.TYPE4, r,
                             {"z": 3 * (r + 1), "x": 2 * r, "y": 2 * (r + 1)})
        return CycleSpec(CycleFamily.TYPE4, r + 1, {"z": r, "x": 2 * (r + 1), "y": 2 * r})
    if fam == ColoringFamily.COLORING4:
        if even:
            return CycleSpec(CycleFamily.TYPE5, 2 * r + 1, {"z": r + 1, "y": r + 1, "x": r})
        return CycleSpec(CycleFamily.TYPE6, 2 * r + 1, {"z": r, "y": r, "x": r + 1})
    if spec.variant == "two":
        sq, sq1 = r * r, (r + 1) ** 2
        return CycleSpec(CycleFamily.TYPE1, 2, {"z": sq1, "x": sq} if even else {"z": sq, "x": sq1})
    m = 2 * r * r + 2 * r
    if r % 3 == 1:
        z, x = Fraction(m - 1, 3), Fraction(m + 2, 3)
    elif r % 3 == 2:
        k = (r + 1) // 3
        z, x = Fraction(m, 3) - 2 * k + 1, Fraction(m, 3) + k
    else:
        k = r // 3
        z, x = Fraction(m, 3) + 2 * k + 1, Fraction(m, 3) - k
    return CycleSpec(CycleFamily.TYPE1, 3, {"z": z, "x": x})


class FoldMismatch(AssertionError):
    pass


def family_cycle(spec: FamilySpec) -> WeightedCycle:
    """The folded weighted cycle of a family, checked against the actual fold."""
    cycle = build_cycle(_cycle_spec(spec))
    folded = fold_profile(project_ball(spec.r, 1), cycle.p).values()
    if cycle.values() != folded:
        raise FoldMismatch(f"{spec.label()} r={spec.r}: tabulated weights "
                           f"{[str(v) for v in cycle.values()]} differ from the fold "
                           f"{[str(v) for v in folded]}")
    return cycle


# -- table -------------------------------------------------------------------
@dataclass(frozen=True)
class CodeTableRow:
    family: ColoringFamily
    r: int
    a: int
    b: int
    alpha: Optional[int] = None
    in_theorem_scope: bool = False
    variant: Optional[str] = None
    kind: str = ""  # structure tag of the underlying cycle row

    def key(self) -> tuple:
        return (int(self.family), self.variant or "", -1 if self.alpha is None else self.alpha, self.a)

    def to_dict(self) -> dict:
        return {"family": str(self.family), "r": self.r, "alpha": self.alpha, "a": self.a,
                "b": self.b, "in_scope": self.in_theorem_scope, "variant": self.variant}


def _selected_rows(spec: FamilySpec, cycle: WeightedCycle) -> list:
    rows = predicted_rows(cycle.origin)
    fam = spec.family
    if fam in (ColoringFamily.COLORING1, ColoringFamily.COLORING5):
        return rows
    if fam == ColoringFamily.COLORING2:
        return [r for r in rows if r.structure.kind == "antiperiodic"]
    if fam == ColoringFamily.COLORING3:
        if cycle.origin.family == CycleFamily.TYPE1:
            return rows
        return [r for r in rows if r.structure.kind in ("balanced", "alternate")]
    return [r for r in rows if r.structure.kind == "pattern"]


def _as_int(value: Fraction) -> int:
    if value.denominator != 1:
        raise ValueError(f"non-integer code constant {value}")
    return int(value)


def family_rows(spec: FamilySpec) -> list:
    cycle = family_cycle(spec)
    out = []
    # on C_2 the single Type 1 row is the alternate coloring
    degenerate = spec.family == ColoringFamily.COLORING3 and cycle.p == 2
    for row in _selected_rows(spec, cycle):
        a, b = _as_int(row.a.const), _as_int(row.b.const)
        alpha = None if degenerate else row.alpha
        kind = "alternate" if degenerate else str(row.structure)
        out.append(CodeTableRow(spec.family, spec.r, a, b, alpha, abs(a - b) > 4,
                                spec.variant, kind))
    return out


def theorem_table(r: int) -> list:
    """Code constants per family at radius r, derived from the cycle rows."""
    if r < 2:
        raise CodeSpecError(f"radius must be at least 2 (got r={r})")
    rows = []
    for spec in family_specs(r):
        rows.extend(family_rows(spec))
    return sorted(rows, key=CodeTableRow.key)


# The table as printed, transcribed as functions of (r, alpha).  Coloring 5
# rows for r = 3k-1 and r = 3k are read as a = z + alpha*x, b = (alpha+1)*x.
def printed_table(r: int) -> list:
    """(family, variant, alpha, a, b) tuples transcribed from the printed table."""
    out = []
    F = Fraction
    if r % 2 == 0:
        for al in range(0, r):
            out.append((1, None, al, r + 1 + al * (2 * r + 1), (al + 1) * (2 * r + 1)))
        out.append((2, None, None, F(r, 2) * (2 * r + 1), F(r * r, 2) + (F(r, 2) + 1) * (r + 1)))
        for al in range(0, (r - 4) // 2 + 1):
            out.append((3, None, al, 2 * (al + 1) * r + (2 * al + 3) * (r + 1),
                        2 * (al + 1) * (2 * r + 1)))
        out.append((3, None, None, (r + 1) ** 2, r * r))
        out.append((5, "two", 0, (r + 1) ** 2, r * r))
    else:
        for al in range(0, r - 1):
            out.append((1, None, al, 3 * r + 2 + al * (2 * r + 1), (al + 1) * (2 * r + 1)))
        out.append((2, None, None, F(r + 1, 2) * (2 * r + 1),
                    F((r + 1) ** 2, 2) + (F(r + 1, 2) - 1) * r))
        for al in range(0, (r - 3) // 2 + 1):
            out.append((3, None, al, 2 * (al + 1) * (r + 1) + (2 * al + 1) * r,
                        2 * (al + 1) * (2 * r + 1)))
        out.append((3, None, None, r * r, (r + 1) ** 2))
        out.append((5, "two", 0, r * r, (r + 1) ** 2))
    if (2 * r + 1) % 3 == 0:
        out.append((4, None, None, F((2 * r + 1) ** 2, 3), F((2 * r + 1) ** 2, 3) + 1))
    m = F(2 * r * r + 2 * r, 3)
    for al in (0, 1):
        if r % 3 == 1:
            x = F(2 * r * r + 2 * r + 2, 3)
            out.append((5, "three", al, F(2 * r * r + 2 * r - 1, 3) + al * x, (al + 1) * x))
        elif r % 3 == 2:
            k = (r + 1) // 3
            out.append((5, "three", al, m - 2 * k + 1 + al * (m + k), (al + 1) * (m + k)))
        else:
            k = r // 3
            out.append((5, "three", al, m + 2 * k - 1 + al * (m - k), (al + 1) * (m - k)))
    return out


def table_deviations(r: int) -> list:
    """Differences between the derived table and the printed one at radius r."""
    derived = {}
    for row in theorem_table(r):
        derived.setdefault((int(row.family), row.variant), set()).add((row.a, row.b))
    printed = {}
    for fam, var, _al, a, b in printed_table(r):
        printed.setdefault((fam, var), set()).add((a, b))
    notes = []
    for key in sorted(set(derived) | set(printed), key=lambda k: (k[0], k[1] or "")):
        d, p = derived.get(key, set()), printed.get(key, set())
        for a, b in sorted(p - d):
            notes.append({"family": f"Coloring{key[0]}", "variant": key[1], "side": "printed",
                          "a": str(a), "b": str(b)})
        for a, b in sorted(d - p):
            notes.append({"family": f"Coloring{key[0]}", "variant": key[1], "side": "derived",
                          "a": a, "b": b})
    return notes


# -- presets and generation --------------------------------------------------
class PresetKind(enum.Enum):
    INITIAL_BLOCK = "initial-block"
    ALTERNATE = "alternate"
    HALF_BLACK = "half-black"
    THREE_PATTERN = "three-pattern"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class CodePreset:
    kind: PresetKind
    alpha: Optional[int] = None
    coloring: Optional[Coloring] = None

    @classmethod
    def parse(cls, name: str, alpha: Optional[int] = None, pattern: Optional[str] = None) -> "CodePreset":
        try:
            kind = PresetKind(name.lower().replace("_", "-"))
        except ValueError:
            names = ", ".join(k.value for k in PresetKind)
            raise CodeSpecError(f"unknown preset {name!r} (one of {names})") from None
        if kind == PresetKind.EXPLICIT:
            if pattern is None:
                raise CodeSpecError("the explicit preset needs a pattern")
            return cls(kind, alpha, Coloring.parse(pattern))
        return cls(kind, alpha)

    def __str__(self) -> str:
        if self.kind == PresetKind.EXPLICIT:
            return f"explicit({self.coloring.bits()})"
        return self.kind.value + (f"({self.alpha})" if self.alpha is not None else "")


def preset_coloring(spec: FamilySpec, preset: CodePreset, p: int) -> Coloring:
    kind, al = preset.kind, preset.alpha
    if kind == PresetKind.EXPLICIT:
        if len(preset.coloring) != p:
            raise CodeSpecError(f"explicit pattern has length {len(preset.coloring)}, cycle has p={p}")
        return preset.coloring
    if kind == PresetKind.ALTERNATE:
        if p % 2:
            raise CodeSpecError(f"alternate preset needs an even cycle (p={p})")
        return Coloring.from_blacks(p, range(0, p, 2))
    if kind == PresetKind.HALF_BLACK:
        if p % 2:
            raise CodeSpecError(f"half-black preset needs an even cycle (p={p})")
        return Coloring.from_blacks(p, range(p // 2))
    al = 0 if al is None else al
    if al < 0:
        raise CodeSpecError("alpha must be non-negative")
    if kind == PresetKind.THREE_PATTERN:
        if p % 3:
            raise CodeSpecError(f"three-pattern preset needs 3 | p (p={p})")
        if spec.family == ColoringFamily.COLORING5:
            if al > 1:
                raise CodeSpecError("three-pattern on Coloring 5 takes alpha in {0, 1}")
            return Coloring.from_blacks(p, range(al + 1))
        return Coloring.from_blacks(p, [i for i in range(p) if i % 3 != 2])
    # initial block
    if spec.family == ColoringFamily.COLORING3:
        n = 2 * al + 2
    else:
        n = al + 1
    if n >= p:
        raise CodeSpecError(f"initial block of {n} blacks does not fit p={p}")
    return Coloring.from_blacks(p, range(n))


def default_preset(row: CodeTableRow) -> CodePreset:
    fam = row.family
    if fam == ColoringFamily.COLORING1:
        return CodePreset(PresetKind.INITIAL_BLOCK, row.alpha)
    if fam == ColoringFamily.COLORING2:
        return CodePreset(PresetKind.HALF_BLACK)
    if fam == ColoringFamily.COLORING3:
        if row.alpha is None:
            return CodePreset(PresetKind.ALTERNATE)
        return CodePreset(PresetKind.INITIAL_BLOCK, row.alpha)
    if fam == ColoringFamily.COLORING4:
        return CodePreset(PresetKind.THREE_PATTERN)
    if row.variant == "two":
        return CodePreset(PresetKind.ALTERNATE)
    return CodePreset(PresetKind.THREE_PATTERN, row.alpha)


@dataclass(frozen=True)
class GeneratedCode:
    spec: FamilySpec
    preset: CodePreset
    coloring: object  # PeriodicColoring
    a: int
    b: int

    def to_dict(self) -> dict:
        return {
            "family": str(self.spec.family),
            "variant": self.spec.variant,
            "r": self.spec.r,
            "preset": str(self.preset),
            "orientation": self.coloring.orientation.value,
            "p": self.coloring.pattern.p,
            "pattern": self.coloring.pattern.colors.bits(),
            "a": self.a,
            "b": self.b,
        }


def generate_code(spec: FamilySpec, preset: CodePreset,
                  orientation=Orientation.PARALLEL) -> GeneratedCode:
    """Build the diagonal coloring for a preset after checking it on the folded cycle."""
    cycle = family_cycle(spec)
    coloring = preset_coloring(spec, preset, cycle.p)
    verdict = classify_labelling(rotation_instance(cycle), coloring)
    if not verdict.is_labelling:
        i, j = verdict.witness
        raise PresetRejected(
            f"preset {preset} gives a non-constant labelling of the folded cycle",
            {"pattern": coloring.bits(), "rotations": [i, j]})
    a = _as_int(verdict.a.const) if verdict.a is not None else None
    b = _as_int(verdict.b.const) if verdict.b is not None else None
    lattice = build_diagonal_coloring(LinePattern(coloring), orientation)
    return GeneratedCode(spec, preset, lattice, a, b)


# -- pipeline ----------------------------------------------------------------
DEFAULT_PIPELINE_MAX_R = 8


@dataclass
class PipelineRow:
    family: str
    variant: Optional[str]
    alpha: Optional[int]
    r: int
    preset: str
    pattern: str
    a: int
    b: int
    cycle_a: Optional[int]
    cycle_b: Optional[int]
    lattice_a: Optional[int]
    lattice_b: Optional[int]
    verified: bool
    in_scope: bool
    crossed_verified: Optional[bool] = None
    violation: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return (self.verified and (self.cycle_a, self.cycle_b) == (self.a, self.b)
                and (self.lattice_a, self.lattice_b) == (self.a, self.b))


@dataclass
class PipelineReport:
    r: int
    rows: list = field(default_factory=list)
    deviations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)

    def to_dict(self) -> dict:
        return {"r": self.r, "ok": self.ok, "rows": [asdict(row) for row in self.rows],
                "deviations": self.deviations}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["family", "variant", "alpha", "r", "preset", "pattern", "a", "b",
                "lattice_a", "lattice_b", "verified", "in_scope", "crossed_verified"]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in self.rows:
            d = asdict(row)
            w.writerow(["" if d[c] is None else d[c] for c in cols])
        return buf.getvalue()


def pipeline_bound() -> int:
    raw = os.environ.get("GRIDCOVER_MAX_R")
    return int(raw) if raw else DEFAULT_PIPELINE_MAX_R


def end_to_end(r: int, crossed: bool = True, max_r: Optional[int] = None) -> PipelineReport:
    """Generate a preset code for every table row at r and verify it on the lattice."""
    limit = pipeline_bound() if max_r is None else max_r
    if not 2 <= r <= limit:
        raise CodeSpecError(f"end_to_end needs 2 <= r <= {limit} (got r={r})")
    report = PipelineReport(r, deviations=table_deviations(r))
    for row in theorem_table(r):
        spec = FamilySpec(row.family, r, row.variant)
        preset = default_preset(row)
        try:
            code = generate_code(spec, preset)
        except PresetRejected as exc:
            report.rows.append(PipelineRow(str(row.family), row.variant, row.alpha, r, str(preset),
                                           "", row.a, row.b, None, None, None, None, False,
                                           row.in_theorem_scope, violation=exc.witness))
            continue
        check = verify_code(code.coloring, r)
        crossed_ok = None
        if crossed:
            alt = build_diagonal_coloring(code.coloring.pattern, Orientation.CROSSED)
            rep = verify_code(alt, r)
            crossed_ok = rep.verified and (rep.a, rep.b) == (row.a, row.b)
        report.rows.append(PipelineRow(
            str(row.family), row.variant, row.alpha, r, str(preset),
            code.coloring.pattern.colors.bits(), row.a, row.b, code.a, code.b,
            check.a, check.b, check.verified, row.in_theorem_scope, crossed_ok, check.violation))
    return report
