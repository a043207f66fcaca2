"""Weighted cycles of Types 1-8 and their constant 2-labellings under rotation.

Each family is a word in the letters z, x, y, t.  ``predicted_rows`` holds the
classification table as data; ``cross_check`` compares it against exhaustive
enumeration, both on the constants (a, b) and on how many colorings realize
each pair.  The predicted counts come from structural predicates on the
colorings only (periodicity, parity balance, ...), never from weighted sums.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .label_core import (
    Automorphism,
    Coloring,
    LabellingInstance,
    VertexWeighting,
    complement_coloring,
    enumerate_labellings,
    enumeration_bound,
    EnumerationBoundError,
)
from .weights import BASIS, RelationSet, T, WeightExpr, X, Y, Z

# screened to satisfy every inequation and no Type 8 special relation
DEFAULT_CONCRETE = {"z": 1009, "x": 97, "y": 301, "t": 555}


class CycleSpecError(ValueError):
    """A cycle specification violates one of its family constraints."""


class CycleFamily(enum.IntEnum):
    TYPE1 = 1
    TYPE2 = 2
    TYPE3 = 3
    TYPE4 = 4
    TYPE5 = 5
    TYPE6 = 6
    TYPE7 = 7
    TYPE8 = 8

    @classmethod
    def parse(cls, value) -> "CycleFamily":
        if isinstance(value, CycleFamily):
            return value
        text = str(value).lower().replace("type", "").strip()
        try:
            return cls(int(text))
        except ValueError:
            raise CycleSpecError(f"unknown cycle family {value!r} (expected 1..8)") from None


_INEQUATIONS = {
    CycleFamily.TYPE1: (),
    CycleFamily.TYPE2: (("x", "t"),),
    CycleFamily.TYPE3: (("x", "y"),),
    CycleFamily.TYPE4: (("x", "y"),),
    CycleFamily.TYPE5: (("x", "y"),),
    CycleFamily.TYPE6: (("x", "y"),),
    CycleFamily.TYPE7: (("x", "y"), ("x", "t")),
    CycleFamily.TYPE8: (("x", "y"), ("y", "t")),
}


def _check_p(family: CycleFamily, p: int) -> None:
    def need(cond: bool, text: str):
        if not cond:
            raise CycleSpecError(f"Type {int(family)} requires {text} (got p={p})")

    need(isinstance(p, int) and p >= 1, "a positive integer p")
    if family == CycleFamily.TYPE2:
        need(p % 2 == 0 and p >= 4, "p even and p >= 4")
    elif family == CycleFamily.TYPE3:
        need(p % 2 == 1 and p > 1, "p odd and p > 1")
    elif family == CycleFamily.TYPE4:
        need(p % 2 == 0 and p >= 4, "p even and p >= 4")
    elif family == CycleFamily.TYPE5:
        need(p % 4 == 1 and p > 1, "p = 1 (mod 4) and p > 1")
    elif family == CycleFamily.TYPE6:
        need(p % 4 == 3 and p > 3, "p = 3 (mod 4) and p > 3")
    elif family == CycleFamily.TYPE7:
        need(p % 4 == 2 and p > 2, "p = 2 (mod 4) and p > 2")
    elif family == CycleFamily.TYPE8:
        need(p % 4 == 0 and p > 4, "p = 0 (mod 4) and p > 4")


def family_word(family: CycleFamily, p: int) -> str:
    _check_p(family, p)
    if family == CycleFamily.TYPE1:
        return "z" + "x" * (p - 1)
    if family == CycleFamily.TYPE2:
        h = "x" * ((p - 2) // 2)
        return "z" + h + "t" + h
    if family == CycleFamily.TYPE3:
        return "z" + "xy" * ((p - 1) // 2)
    if family == CycleFamily.TYPE4:
        return "z" + "xy" * ((p - 2) // 2) + "x"
    if family == CycleFamily.TYPE5:
        q = (p - 1) // 4
        return "z" + "xy" * q + "yx" * q
    if family == CycleFamily.TYPE6:
        q = (p - 3) // 4
        return "z" + "xy" * q + "xx" + "yx" * q
    if family == CycleFamily.TYPE7:
        q = (p - 2) // 4
        return "z" + "xy" * q + "t" + "yx" * q
    q = (p - 4) // 4
    return "z" + "xy" * q + "xtx" + "yx" * q


def special_t_relation(p: int) -> WeightExpr:
    """4t - p*x - (4-p)*y, i.e. t = (p/4)x + (1 - p/4)y with denominators cleared."""
    return 4 * T - p * X - (4 - p) * Y


@dataclass(frozen=True)
class CycleSpec:
    family: CycleFamily
    p: int
    values: Optional[Mapping] = None  # None: symbolic weights
    special_t: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family", CycleFamily.parse(self.family))
        if self.values is not None:
            vals = {k: Fraction(v) for k, v in dict(self.values).items()}
            unknown = set(vals) - set(BASIS)
            if unknown:
                raise CycleSpecError(f"unknown weight symbols {sorted(unknown)}")
            object.__setattr__(self, "values", tuple(sorted(vals.items())))

    @property
    def symbolic(self) -> bool:
        return self.values is None

    def weight_values(self) -> dict:
        """Concrete weight values (derived t under the special relation)."""
        if self.values is None:
            return {}
        vals = dict(self.values)
        if self.special_t:
            derived = Fraction(self.p, 4) * vals["x"] + (1 - Fraction(self.p, 4)) * vals["y"]
            if "t" in vals and vals["t"] != derived:
                raise CycleSpecError(
                    f"special-t requires t = {derived} for p={self.p}, got t = {vals['t']}")
            vals["t"] = derived
        return vals

    def relations(self) -> RelationSet:
        rels = (special_t_relation(self.p),) if (self.special_t and self.symbolic) else ()
        return RelationSet(rels, _INEQUATIONS[self.family])

    def validate(self) -> None:
        _check_p(self.family, self.p)
        if self.special_t and self.family != CycleFamily.TYPE8:
            raise CycleSpecError("the special-t relation only applies to Type 8")
        word = family_word(self.family, self.p)
        if self.values is not None:
            vals = self.weight_values()
            missing = sorted(set(word) - set(vals))
            if missing:
                raise CycleSpecError(f"missing concrete values for {missing}")
            present = set(word)
            for a, b in _INEQUATIONS[self.family]:
                if a in present and b in present and vals[a] == vals[b]:
                    raise CycleSpecError(
                        f"Type {int(self.family)} requires {a} != {b} (both are {vals[a]})")
        else:
            bad = self.relations().violated_inequations()
            if bad:
                raise CycleSpecError(f"relations force equal symbols: {bad}")

    def label(self) -> str:
        tag = " special-t" if self.special_t else ""
        mode = "symbolic" if self.symbolic else "concrete"
        return f"Type {int(self.family)} p={self.p}{tag} ({mode})"


@dataclass(frozen=True)
class WeightedCycle:
    p: int
    weights: VertexWeighting
    origin: Optional[CycleSpec] = None
    relations: RelationSet = RelationSet()
    word: Optional[str] = None

    def __post_init__(self):
        if len(self.weights) != self.p:
            raise ValueError(f"cycle of length {self.p} with {len(self.weights)} weights")

    def total(self) -> WeightExpr:
        return self.weights.total(self.relations)

    def values(self) -> list:
        """Concrete weights as Fractions (only for constant weights)."""
        out = []
        for w in self.weights.weights:
            if not w.is_constant:
                raise ValueError("cycle has symbolic weights")
            out.append(w.const)
        return out


def build_cycle(spec: CycleSpec) -> WeightedCycle:
    spec.validate()
    word = family_word(spec.family, spec.p)
    if spec.symbolic:
        letters = {"z": Z, "x": X, "y": Y, "t": T}
    else:
        letters = {k: WeightExpr.constant(v) for k, v in spec.weight_values().items()}
    weights = VertexWeighting(tuple(letters[ch] for ch in word))
    return WeightedCycle(spec.p, weights, spec, spec.relations(), word)


def rotation(p: int, k: int) -> Automorphism:
    if p < 1:
        raise ValueError("rotation needs p >= 1")
    return Automorphism(tuple((i + k) % p for i in range(p)))


def rotation_instance(cycle: WeightedCycle) -> LabellingInstance:
    return LabellingInstance(
        cycle.weights, tuple(rotation(cycle.p, k) for k in range(cycle.p)), 0, cycle.relations)


# -- structure ---------------------------------------------------------------

@dataclass(frozen=True)
class PatternClass:
    periods: frozenset
    antiperiods: frozenset
    is_alternate: bool


def pattern_class(coloring: Coloring) -> PatternClass:
    p = len(coloring)
    periods, anti = set(), set()
    for m in range(1, p + 1):
        same = [coloring[i] == coloring[(i + m) % p] for i in range(p)]
        if all(same):
            periods.add(m)
        elif not any(same):
            anti.add(m)
    alternate = p % 2 == 0 and 2 in periods and coloring[0] != coloring[1]
    return PatternClass(frozenset(periods), frozenset(anti), alternate)


def _rotations_of_repeat(unit: str, p: int) -> set:
    if p % len(unit):
        return set()
    base = Coloring.parse(unit * (p // len(unit)))
    return {base.rotated(k) for k in range(len(unit))}


def parity_balanced(coloring: Coloring) -> bool:
    even = sum(1 for i in range(0, len(coloring), 2) if coloring[i])
    odd = sum(1 for i in range(1, len(coloring), 2) if coloring[i])
    return even == odd


def is_psi(coloring: Coloring) -> bool:
    """One parity class all black, the other antiperiodic under the half-turn."""
    p = len(coloring)
    if p % 4:
        return False
    h = p // 2
    for par in (0, 1):
        full = all(coloring[i] for i in range(par, p, 2))
        anti = all(coloring[i] != coloring[(i + h) % p] for i in range(1 - par, p, 2))
        if full and anti:
            return True
    return False


@dataclass(frozen=True)
class StructureTag:
    """Structural description of the colorings realizing a row.

    kind is one of: any, periodic, antiperiodic, alternate, balanced,
    periodic-balanced, pattern, psi.
    """

    kind: str
    m: Optional[int] = None
    pattern: Optional[str] = None
    complemented: bool = False

    def holds(self, coloring: Coloring) -> bool:
        c = complement_coloring(coloring) if self.complemented else coloring
        k = self.kind
        if k == "any":
            return True
        if k == "alternate":
            return pattern_class(c).is_alternate
        if k == "periodic":
            return self.m in pattern_class(c).periods
        if k == "antiperiodic":
            return self.m in pattern_class(c).antiperiods
        if k == "balanced":
            return parity_balanced(c)
        if k == "periodic-balanced":
            return self.m in pattern_class(c).periods and parity_balanced(c)
        if k == "pattern":
            return c in _rotations_of_repeat(self.pattern, len(c))
        if k == "psi":
            return is_psi(c)
        raise ValueError(f"unknown structure kind {k!r}")

    def complement(self) -> "StructureTag":
        return StructureTag(self.kind, self.m, self.pattern, not self.complemented)

    def __str__(self) -> str:
        body = self.kind
        if self.m is not None:
            body += f"({self.m})"
        if self.pattern is not None:
            body += f"({Coloring.parse(self.pattern).symbols()})"
        return ("complement of " + body) if self.complemented else body


@dataclass(frozen=True)
class PredictedRow:
    a: WeightExpr
    b: WeightExpr
    structure: StructureTag
    alpha: Optional[int] = None
    formula: str = ""
    side_condition: Optional[str] = None
    source: str = "table"  # "table" or "complement"
    blacks: int = 0

    def pair(self) -> tuple:
        return (self.a, self.b)

    def black_count(self) -> int:
        return self.blacks


def _rows(spec: CycleSpec, printed: bool) -> list:
    p, fam = spec.p, spec.family
    F = Fraction
    rows = []

    def add(a, b, tag, alpha=None, formula="", cond=None):
        rows.append((a, b, tag, alpha, formula, cond))

    if fam == CycleFamily.TYPE1:
        for al in range(0, p - 1):
            add(al * X + Z, (al + 1) * X, StructureTag("any"), al, "a=αx+z, b=(α+1)x")
    elif fam == CycleFamily.TYPE2:
        for al in range(0, (p - 4) // 2 + 1):
            add(2 * al * X + T + Z, 2 * (al + 1) * X, StructureTag("periodic", p // 2), al,
                "a=2αx+t+z, b=2(α+1)x")
        add((p // 2 - 1) * X + Z, (p // 2 - 1) * X + T, StructureTag("antiperiodic", p // 2),
            None, "a=(p/2-1)x+z, b=(p/2-1)x+t")
    elif fam == CycleFamily.TYPE4:
        for al in range(0, (p - 4) // 2 + 1):
            add((al + 1) * X + al * Y + Z, (al + 1) * (X + Y), StructureTag("balanced"), al,
                "a=(α+1)x+αy+z, b=(α+1)(x+y)")
        add((p // 2 - 1) * Y + Z, (p // 2) * X, StructureTag("alternate"), None,
            "a=(p/2-1)y+z, b=(p/2)x")
    elif fam in (CycleFamily.TYPE5, CycleFamily.TYPE6):
        if p % 3 == 0:
            q = p // 3
            b = (q - 1) * X + (q + 1) * Y if fam == CycleFamily.TYPE5 else (q + 1) * X + (q - 1) * Y
            add(q * X + (q - 1) * Y + Z, b, StructureTag("pattern", pattern="110"), None,
                "a=(p/3)x+(p/3-1)y+z", "p = 0 (mod 3)")
    elif fam == CycleFamily.TYPE7:
        add((p // 2 - 1) * Y + Z, (p // 2 - 1) * X + T, StructureTag("alternate"), None,
            "a=(p/2-1)y+z, b=(p/2-1)x+t")
        # the α = p/2-1 instance of the printed range is the all-black coloring
        top = p // 2 - 1 if printed else p // 2 - 2
        for al in range(0, top + 1):
            add(al * (X + Y) + T + Z, (al + 1) * (X + Y), StructureTag("periodic", p // 2), al,
                "a=α(x+y)+t+z, b=(α+1)(x+y)")
    elif fam == CycleFamily.TYPE8:
        q = p // 4
        add((p // 2 - 2) * Y + Z + T, (p // 2) * X, StructureTag("alternate"), None,
            "a=(p/2-2)y+z+t, b=(p/2)x")
        top = q - 1 if printed else q - 2
        for al in range(0, top + 1):
            add((2 * al + 2) * X + 2 * al * Y + Z + T, (2 * al + 2) * (X + Y),
                StructureTag("periodic-balanced", p // 2), al,
                "a=(2α+2)x+2αy+z+t, b=(2α+2)(x+y)")
        add(q * X + (q - 1) * Y + Z, q * X + (q - 1) * Y + T,
            StructureTag("antiperiodic", p // 2), None, "a=(p/4)x+(p/4-1)y+z, b=(p/4)x+(p/4-1)y+t")
        if spec.special_t:
            cond = "t=(p/4)x+(1-p/4)y"
            add((p // 2) * X + (q - 1) * Y + Z, F(3 * p, 4) * X, StructureTag("psi"), None,
                "a=(p/2)x+(p/4-1)y+z, b=(3p/4)x", cond)
            add((q - 1) * Y + Z, q * X, StructureTag("psi", complemented=True), None,
                "a=(p/4-1)y+z, b=(p/4)x", cond)
    return rows


def _instantiate(spec: CycleSpec, raw: list) -> list:
    rel = spec.relations()
    vals = spec.weight_values() if not spec.symbolic else None
    out = []
    for a, b, tag, alpha, formula, cond in raw:
        # one letter per black vertex in the symbolic sum
        blacks = int(a.coefficient_sum())
        a, b = rel.reduce(a), rel.reduce(b)
        if vals is not None:
            a = WeightExpr.constant(a.evaluate(vals))
            b = WeightExpr.constant(b.evaluate(vals))
        out.append(PredictedRow(a, b, tag, alpha, formula, cond, blacks=blacks))
    return out


def predicted_rows(spec: CycleSpec) -> list:
    """The classification rows for the family, instantiated at p.

    Ranges are the ones realized by exhaustive enumeration; ``printed_rows``
    keeps the ranges exactly as tabulated in the source table.
    """
    spec.validate()
    return _instantiate(spec, _rows(spec, printed=False))


def printed_rows(spec: CycleSpec) -> list:
    spec.validate()
    return _instantiate(spec, _rows(spec, printed=True))


def complement_closure(rows: list, total: WeightExpr, p: int) -> list:
    """Add the complementary row (total-b, total-a) of every row not already present."""
    out = list(rows)
    pairs = {r.pair() for r in rows}
    for r in rows:
        pair = (total - r.b, total - r.a)
        if pair not in pairs:
            pairs.add(pair)
            out.append(PredictedRow(pair[0], pair[1], r.structure.complement(), r.alpha,
                                    "complement of " + r.formula, r.side_condition, "complement",
                                    blacks=p - r.blacks))
    return out


def structural_counts(rows: list, p: int) -> Counter:
    """Per (a, b) pair, the number of colorings matching any row's structure."""
    by_pair: dict = {}
    for r in rows:
        by_pair.setdefault(r.pair(), []).append(r)
    counts: Counter = Counter()
    for m in range(1, (1 << p) - 1):
        c = Coloring.from_index(m, p)
        n = c.black_count()
        for pair, group in by_pair.items():
            if any(r.black_count() == n and r.structure.holds(c) for r in group):
                counts[pair] += 1
    return counts


@dataclass
class CrossCheckReport:
    spec: CycleSpec
    found: Counter
    predicted: Counter
    match: bool
    structure_ok: bool
    discrepancies: list = field(default_factory=list)
    deviations: list = field(default_factory=list)
    labellings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        def pairs(counter):
            return [{"a": str(a), "b": str(b), "count": n}
                    for (a, b), n in sorted(counter.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))]

        return {
            "family": int(self.spec.family),
            "p": self.spec.p,
            "special_t": self.spec.special_t,
            "mode": "symbolic" if self.spec.symbolic else "concrete",
            "found": pairs(self.found),
            "predicted": pairs(self.predicted),
            "match": self.match,
            "structure_ok": self.structure_ok,
            "discrepancies": self.discrepancies,
            "deviations": self.deviations,
        }


def cross_check(spec: CycleSpec, bound: Optional[int] = None) -> CrossCheckReport:
    limit = enumeration_bound() if bound is None else bound
    if spec.p > limit:
        raise EnumerationBoundError(f"p={spec.p} exceeds the enumeration bound {limit}")
    cycle = build_cycle(spec)
    inst = rotation_instance(cycle)
    rows = complement_closure(predicted_rows(spec), cycle.total(), spec.p)

    found: Counter = Counter()
    labellings = []
    for coloring, verdict in enumerate_labellings(inst, bound=limit):
        if verdict.is_trivial:
            continue
        found[(verdict.a, verdict.b)] += 1
        labellings.append((coloring, verdict))
    predicted = structural_counts(rows, spec.p)

    discrepancies = []
    for pair in sorted(set(found) | set(predicted), key=lambda pr: (str(pr[0]), str(pr[1]))):
        if found.get(pair, 0) != predicted.get(pair, 0):
            discrepancies.append({"a": str(pair[0]), "b": str(pair[1]),
                                  "found": found.get(pair, 0), "predicted": predicted.get(pair, 0)})

    by_pair: dict = {}
    for r in rows:
        by_pair.setdefault(r.pair(), []).append(r)
    structure_ok = True
    for coloring, verdict in labellings:
        group = by_pair.get((verdict.a, verdict.b), [])
        if not any(r.structure.holds(coloring) for r in group):
            structure_ok = False
            discrepancies.append({"coloring": coloring.bits(), "a": str(verdict.a),
                                  "b": str(verdict.b), "reason": "structure tag not satisfied"})

    return CrossCheckReport(spec, found, predicted, found == predicted, structure_ok,
                            discrepancies, table_deviations(spec), labellings)


def table_deviations(spec: CycleSpec) -> list:
    """Printed rows that the realized table drops, with the reason."""
    realized = {r.pair() for r in predicted_rows(spec)}
    notes = []
    p = spec.p
    for r in printed_rows(spec):
        if r.pair() in realized:
            continue
        if r.black_count() == p:
            reason = "instance is the all-black coloring (trivial)"
        else:
            reason = "not realized"
        notes.append({"a": str(r.a), "b": str(r.b), "alpha": r.alpha, "reason": reason})
    if spec.family in (CycleFamily.TYPE5, CycleFamily.TYPE6) and p % 3 == 0:
        notes.append({"reason": "complementary row (pattern •∘∘) is realized but listed only up to complement"})
    return notes


def valid_ps(family: CycleFamily, p_max: int) -> list:
    out = []
    for p in range(1, p_max + 1):
        try:
            _check_p(family, p)
        except CycleSpecError:
            continue
        if family == CycleFamily.TYPE1 and p < 2:
            continue
        out.append(p)
    return out
