"""Constant 2-labellings of weighted vertex sets.

A coloring is checked against an explicit list of automorphisms and a base
vertex: automorphisms that send the base vertex to a black vertex must all
produce the same weighted black sum ``a``, the others the same sum ``b``.
"""

from __future__ import annotations

import enum
import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .weights import RelationSet, WeightExpr, wsum

DEFAULT_ENUMERATION_BOUND = 24
_CHUNK = 1 << 14

BLACK_CHARS = "1•bB#"
WHITE_CHARS = "0∘wW."


class DimensionError(ValueError):
    pass


class InvalidInstance(ValueError):
    pass


class EnumerationBoundError(ValueError):
    pass


def enumeration_bound() -> int:
    """Bound on n for exhaustive enumeration; GRIDCOVER_MAX_P overrides it."""
    env = os.environ.get("GRIDCOVER_MAX_P")
    return int(env) if env else DEFAULT_ENUMERATION_BOUND


@dataclass(frozen=True)
class Coloring:
    colors: tuple  # of bool, True = black

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(bool(c) for c in self.colors))

    @classmethod
    def parse(cls, text: str) -> "Coloring":
        out = []
        for ch in text.strip():
            if ch in BLACK_CHARS:
                out.append(True)
            elif ch in WHITE_CHARS:
                out.append(False)
            else:
                raise ValueError(f"invalid color character {ch!r} in {text!r}")
        return cls(tuple(out))

    @classmethod
    def from_index(cls, index: int, n: int) -> "Coloring":
        # vertex 0 is the most significant bit
        return cls(tuple((index >> (n - 1 - i)) & 1 for i in range(n)))

    @classmethod
    def from_blacks(cls, n: int, blacks) -> "Coloring":
        s = set(blacks)
        return cls(tuple(i in s for i in range(n)))

    @classmethod
    def monochromatic(cls, n: int, black: bool) -> "Coloring":
        return cls((black,) * n)

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, i: int) -> bool:
        return self.colors[i]

    def __iter__(self):
        return iter(self.colors)

    def index(self) -> int:
        v = 0
        for c in self.colors:
            v = (v << 1) | int(c)
        return v

    def bits(self) -> str:
        return "".join("1" if c else "0" for c in self.colors)

    def symbols(self) -> str:
        return "".join("•" if c else "∘" for c in self.colors)

    def __str__(self) -> str:
        return self.bits()

    def blacks(self) -> tuple:
        return tuple(i for i, c in enumerate(self.colors) if c)

    def black_count(self) -> int:
        return sum(self.colors)

    @property
    def is_monochromatic(self) -> bool:
        return len(set(self.colors)) <= 1

    def rotated(self, k: int) -> "Coloring":
        """The coloring i -> self[i + k mod n]."""
        n = len(self.colors)
        return Coloring(tuple(self.colors[(i + k) % n] for i in range(n)))


def complement_coloring(coloring: Coloring) -> Coloring:
    return Coloring(tuple(not c for c in coloring.colors))


@dataclass(frozen=True)
class Automorphism:
    perm: tuple

    def __post_init__(self):
        perm = tuple(int(i) for i in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"not a permutation: {perm}")
        object.__setattr__(self, "perm", perm)

    @classmethod
    def identity(cls, n: int) -> "Automorphism":
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.perm)

    def __call__(self, u: int) -> int:
        return self.perm[u]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other: u -> self(other(u))."""
        if len(other) != len(self):
            raise DimensionError("automorphisms act on different vertex sets")
        return Automorphism(tuple(self.perm[other.perm[u]] for u in range(len(self))))


def all_permutations(n: int) -> list:
    return [Automorphism(p) for p in itertools.permutations(range(n))]


@dataclass(frozen=True)
class VertexWeighting:
    weights: tuple

    def __post_init__(self):
        ws = tuple(w if isinstance(w, WeightExpr) else WeightExpr.constant(w) for w in self.weights)
        if not ws:
            raise InvalidInstance("a weighting needs at least one vertex")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def of(cls, *weights) -> "VertexWeighting":
        return cls(tuple(weights))

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, i: int) -> WeightExpr:
        return self.weights[i]

    def total(self, relations: Optional[RelationSet] = None) -> WeightExpr:
        tot = wsum(self.weights)
        return relations.reduce(tot) if relations is not None else tot


@dataclass(frozen=True)
class LabellingInstance:
    weighting: VertexWeighting
    automorphisms: tuple
    base_vertex: int = 0
    relations: RelationSet = RelationSet()

    def __post_init__(self):
        object.__setattr__(self, "automorphisms", tuple(self.automorphisms))
        n = len(self.weighting)
        if not self.automorphisms:
            raise InvalidInstance("the automorphism list is empty")
        for xi in self.automorphisms:
            if len(xi) != n:
                raise InvalidInstance(
                    f"automorphism of length {len(xi)} on a weighting of length {n}")
        if not 0 <= self.base_vertex < n:
            raise InvalidInstance(f"base vertex {self.base_vertex} out of range 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.weighting)

    def total_weight(self) -> WeightExpr:
        return self.weighting.total(self.relations)


class VerdictKind(enum.Enum):
    TRIVIAL_BLACK = "TrivialBlack"
    TRIVIAL_WHITE = "TrivialWhite"
    CONSTANT = "Constant"
    NOT_CONSTANT = "NotConstant"


@dataclass(frozen=True)
class LabellingVerdict:
    kind: VerdictKind
    a: Optional[WeightExpr] = None
    b: Optional[WeightExpr] = None
    witness: Optional[tuple] = None

    @property
    def is_labelling(self) -> bool:
        return self.kind is not VerdictKind.NOT_CONSTANT

    @property
    def is_trivial(self) -> bool:
        return self.kind in (VerdictKind.TRIVIAL_BLACK, VerdictKind.TRIVIAL_WHITE)

    def constants(self) -> tuple:
        return (self.a, self.b)


def weighted_black_sum(coloring: Coloring, xi: Automorphism, weighting: VertexWeighting,
                       relations: Optional[RelationSet] = None) -> WeightExpr:
    """Sum of w(u) over the vertices u with coloring(xi(u)) black."""
    if not (len(coloring) == len(xi) == len(weighting)):
        raise DimensionError(
            f"lengths differ: coloring {len(coloring)}, automorphism {len(xi)}, "
            f"weighting {len(weighting)}")
    total = wsum(weighting[u] for u in range(len(weighting)) if coloring[xi(u)])
    return relations.reduce(total) if relations is not None else total


def classify_labelling(instance: LabellingInstance, coloring: Coloring) -> LabellingVerdict:
    if len(coloring) != instance.n:
        raise DimensionError(f"coloring of length {len(coloring)} on an instance of size {instance.n}")
    rel = instance.relations
    if all(coloring):
        return LabellingVerdict(VerdictKind.TRIVIAL_BLACK, a=instance.total_weight())
    if not any(coloring):
        return LabellingVerdict(VerdictKind.TRIVIAL_WHITE, b=rel.reduce(WeightExpr.zero()))

    first = {True: None, False: None}
    value = {True: None, False: None}
    for k, xi in enumerate(instance.automorphisms):
        cls = coloring[xi(instance.base_vertex)]
        s = weighted_black_sum(coloring, xi, instance.weighting, rel)
        if first[cls] is None:
            first[cls], value[cls] = k, s
        elif s != value[cls]:
            return LabellingVerdict(VerdictKind.NOT_CONSTANT, witness=(first[cls], k))
    return LabellingVerdict(VerdictKind.CONSTANT, a=value[True], b=value[False])


def enumerate_labellings(instance: LabellingInstance, bound: Optional[int] = None) -> list:
    """All colorings that are constant 2-labellings, trivial ones included.

    Colorings are visited as n-digit binary counters with vertex 0 as the
    most significant digit, so the output order is reproducible.
    """
    return list(iter_labellings(instance, bound))


def iter_labellings(instance: LabellingInstance, bound: Optional[int] = None) -> Iterator:
    n = instance.n
    limit = enumeration_bound() if bound is None else bound
    if n > limit:
        raise EnumerationBoundError(
            f"n={n} exceeds the enumeration bound {limit} (set GRIDCOVER_MAX_P to raise it)")

    weights, scale, dtype = _integer_weights(instance)
    perms = np.array([xi.perm for xi in instance.automorphisms], dtype=np.intp)  # (K, n)
    base_targets = perms[:, instance.base_vertex]
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    cache: dict = {}

    def to_expr(vec) -> WeightExpr:
        key = tuple(int(v) for v in vec)
        if key not in cache:
            cache[key] = WeightExpr(tuple(Fraction(v, scale) for v in key[:4]),
                                    Fraction(key[4], scale), reduced=True)
        return cache[key]

    total = 1 << n
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        bits = ((idx[:, None] >> shifts[None, :]) & 1).astype(dtype)  # (C, n)
        # sums[c, k] = sum_u w(u) * bits[c, perm_k(u)]
        sums = np.einsum("ckn,nd->ckd", bits[:, perms], weights)
        base_black = bits[:, base_targets].astype(bool)  # (C, K)
        has_black = base_black.any(axis=1)
        has_white = (~base_black).any(axis=1)
        rows = np.arange(len(idx))
        ref_b = sums[rows, np.argmax(base_black, axis=1)]
        ref_w = sums[rows, np.argmax(~base_black, axis=1)]
        bad_b = ((sums != ref_b[:, None, :]).any(axis=2) & base_black).any(axis=1)
        bad_w = ((sums != ref_w[:, None, :]).any(axis=2) & ~base_black).any(axis=1)
        ok = ~(bad_b | bad_w)
        for c in np.nonzero(ok)[0]:
            m = int(idx[c])
            coloring = Coloring.from_index(m, n)
            if m == total - 1:
                verdict = LabellingVerdict(VerdictKind.TRIVIAL_BLACK, a=to_expr(ref_b[c]))
            elif m == 0:
                verdict = LabellingVerdict(VerdictKind.TRIVIAL_WHITE, b=to_expr(ref_w[c]))
            else:
                verdict = LabellingVerdict(
                    VerdictKind.CONSTANT,
                    a=to_expr(ref_b[c]) if has_black[c] else None,
                    b=to_expr(ref_w[c]) if has_white[c] else None,
                )
            yield coloring, verdict


def _integer_weights(instance: LabellingInstance):
    """Relation-reduced weights scaled to a common integer matrix (n x 5)."""
    vecs = [instance.relations.reduce(w).vector() for w in instance.weighting.weights]
    scale = 1
    for vec in vecs:
        for v in vec:
            scale = math.lcm(scale, Fraction(v).denominator)
    ints = [[int(Fraction(v) * scale) for v in vec] for vec in vecs]
    biggest = max((abs(v) for row in ints for v in row), default=0)
    if biggest * len(ints) < 2 ** 62:
        return np.array(ints, dtype=np.int64), scale, np.int64
    return np.array(ints, dtype=object), scale, object


def complete_graph_admits_nontrivial(weighting: VertexWeighting, base_vertex: int,
                                     relations: Optional[RelationSet] = None) -> bool:
    """Whether K_n under its full automorphism group has a non-trivial labelling."""
    n = len(weighting)
    if n < 2:
        raise InvalidInstance("K_n needs at least two vertices")
    if not 0 <= base_vertex < n:
        raise InvalidInstance(f"base vertex {base_vertex} out of range")
    rel = relations or RelationSet()
    others = {rel.reduce(weighting[u]) for u in range(n) if u != base_vertex}
    return len(others) == 1


def complete_graph_instance(weighting: VertexWeighting, base_vertex: int = 0,
                            relations: Optional[RelationSet] = None) -> LabellingInstance:
    return LabellingInstance(weighting, tuple(all_permutations(len(weighting))), base_vertex,
                             relations or RelationSet())
