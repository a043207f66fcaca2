"""Manhattan balls in Z^2, projection onto a line, folding onto a cycle,
diagonal colorings and a direct (r,a,b)-code verifier for periodic colorings.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .cycles import WeightedCycle
from .label_core import Coloring, VertexWeighting
from .weights import WeightExpr


class LatticeError(ValueError):
    pass


def manhattan_ball_size(r: int) -> int:
    if r < 0:
        raise LatticeError("radius must be non-negative")
    return 2 * r * r + 2 * r + 1


@lru_cache(maxsize=None)
def ball_offsets(r: int) -> tuple:
    """All (d1, d2) with |d1| + |d2| <= r, in lexicographic order."""
    if r < 0:
        raise LatticeError("radius must be non-negative")
    return tuple((d1, d2) for d1 in range(-r, r + 1)
                 for d2 in range(-(r - abs(d1)), r - abs(d1) + 1))


@dataclass(frozen=True)
class ProjectionProfile:
    r: int
    shift: int
    values: tuple  # sorted (i, h(i)) pairs with h(i) > 0

    def __getitem__(self, i: int) -> int:
        return dict(self.values).get(i, 0)

    def as_dict(self) -> dict:
        return dict(self.values)

    def support(self) -> tuple:
        if not self.values:
            return (0, -1)
        return (self.values[0][0], self.values[-1][0])

    def total(self) -> int:
        return sum(h for _, h in self.values)

    def window(self, lo: int, hi: int) -> list:
        d = self.as_dict()
        return [d.get(i, 0) for i in range(lo, hi + 1)]


def _profile(r: int, shift: int, counts: dict) -> ProjectionProfile:
    return ProjectionProfile(r, shift, tuple(sorted((i, h) for i, h in counts.items() if h)))


def project_ball(r: int, shift: int) -> ProjectionProfile:
    """Project B_r(0) onto the horizontal line through 0 along the translation (shift, 1).

    h(i) counts the translates B_r(0) + m*(shift, 1) that contain (i, 0).
    A negative shift is the mirror image and is normalized to |shift|.
    """
    if r < 0:
        raise LatticeError("radius must be non-negative")
    s = abs(shift)
    counts: dict = {}
    for m in range(-r, r + 1):
        reach = r - abs(m)
        for i in range(m * s - reach, m * s + reach + 1):
            counts[i] = counts.get(i, 0) + 1
    return _profile(r, s, counts)


def closed_form_profile(r: int) -> ProjectionProfile:
    """Projection along (1, 1): r+1 on |i| <= r of the parity of r, r on the other parity."""
    if r < 1:
        raise LatticeError("closed form needs r >= 1")
    counts = {i: (r + 1 if (i - r) % 2 == 0 else r) for i in range(-r, r + 1)}
    return _profile(r, 1, counts)


def fold_profile(profile: ProjectionProfile, p: int) -> WeightedCycle:
    if p < 1:
        raise LatticeError("cycle length must be positive")
    w = [0] * p
    for i, h in profile.values:
        w[i % p] += h
    return WeightedCycle(p, VertexWeighting(tuple(WeightExpr.constant(v) for v in w)))


class Orientation(enum.Enum):
    PARALLEL = "parallel"
    CROSSED = "crossed"

    @classmethod
    def parse(cls, value) -> "Orientation":
        if isinstance(value, Orientation):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise LatticeError(f"unknown orientation {value!r} (parallel or crossed)") from None


@dataclass(frozen=True)
class LinePattern:
    colors: Coloring

    def __post_init__(self):
        if len(self.colors) < 1:
            raise LatticeError("a line pattern needs p >= 1")

    @classmethod
    def parse(cls, text: str) -> "LinePattern":
        return cls(Coloring.parse(text))

    @property
    def p(self) -> int:
        return len(self.colors)


@dataclass(frozen=True)
class PeriodicColoring:
    pattern: LinePattern
    orientation: Orientation = Orientation.PARALLEL

    @property
    def period_vectors(self) -> tuple:
        p = self.pattern.p
        if self.orientation is Orientation.PARALLEL:
            return ((p, 0), (1, 1))
        return ((2 * p, 0), (0, 2 * p))

    def color(self, x1: int, x2: int) -> bool:
        p = self.pattern.p
        if self.orientation is Orientation.PARALLEL or (x1 + x2) % 2 == 0:
            return self.pattern.colors[(x1 - x2) % p]
        return self.pattern.colors[(x1 + x2) % p]


@dataclass(frozen=True)
class TorusColoring:
    """Arbitrary coloring of Z^2 periodic under (width, 0) and (0, height).

    rows[j][i] is the color of (i, j).
    """

    rows: tuple

    @property
    def period_vectors(self) -> tuple:
        return ((len(self.rows[0]), 0), (0, len(self.rows)))

    def color(self, x1: int, x2: int) -> bool:
        row = self.rows[x2 % len(self.rows)]
        return bool(row[x1 % len(row)])


def build_diagonal_coloring(pattern: LinePattern, orientation=Orientation.PARALLEL) -> PeriodicColoring:
    return PeriodicColoring(pattern, Orientation.parse(orientation))


def fundamental_domain(u: tuple, v: tuple) -> list:
    """Coset representatives of Z^2 modulo the lattice spanned by u and v.

    The lattice is brought to the basis (A, 0), (B, D) and the box
    [0, A) x [0, D) is returned in lexicographic order.
    """
    det = u[0] * v[1] - u[1] * v[0]
    if det == 0:
        raise LatticeError(f"period vectors {u} and {v} are zero or collinear")
    # rows of the box: gcd of the second coordinates; columns: the index over it
    D = math.gcd(u[1], v[1])
    A = abs(det) // D
    return [(i, j) for i in range(A) for j in range(D)]


class CodeStatus(enum.Enum):
    VERIFIED = "Verified"
    VIOLATED = "Violated"


@dataclass(frozen=True)
class CodeReport:
    status: CodeStatus
    a: Optional[int] = None
    b: Optional[int] = None
    violation: Optional[dict] = None

    @property
    def verified(self) -> bool:
        return self.status is CodeStatus.VERIFIED

    def to_dict(self) -> dict:
        return {"status": self.status.value, "a": self.a, "b": self.b, "violation": self.violation}


def count_black_in_ball(coloring, center: tuple, r: int) -> int:
    c1, c2 = center
    return sum(1 for d1, d2 in ball_offsets(r) if coloring.color(c1 + d1, c2 + d2))


def verify_code(coloring, r: int) -> CodeReport:
    """Check the (r,a,b)-code condition on one fundamental domain.

    Counts use true Z^2 offsets and periodic color lookup, so the torus may be
    smaller than the ball.  A violation reports the lexicographically least
    cell whose count disagrees with the first cell of the same color.
    """
    if r < 1:
        raise LatticeError("verify_code needs r >= 1")
    u, v = coloring.period_vectors
    cells = fundamental_domain(u, v)
    expected = {True: None, False: None}
    first = {True: None, False: None}
    for cell in cells:
        cls = coloring.color(*cell)
        n = count_black_in_ball(coloring, cell, r)
        if expected[cls] is None:
            expected[cls], first[cls] = n, cell
        elif n != expected[cls]:
            return CodeReport(CodeStatus.VIOLATED, violation={
                "cell": list(cell),
                "expected_class": "black" if cls else "white",
                "expected": expected[cls],
                "reference_cell": list(first[cls]),
                "observed": n,
            })
    return CodeReport(CodeStatus.VERIFIED, a=expected[True], b=expected[False])
