"""Exact linear weight expressions over the basis (z, x, y, t).

A weight is either symbolic (a rational combination of the four basis
symbols) or concrete (a rational constant), or a mix of both.  Nothing in
here ever touches a float.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

BASIS = ("z", "x", "y", "t")
_INDEX = {s: i for i, s in enumerate(BASIS)}

Number = Union[int, Fraction]


def as_fraction(value: Union[Number, str]) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floating point weights are not accepted")
    return Fraction(value)


@dataclass(frozen=True)
class WeightExpr:
    coeffs: tuple = (Fraction(0),) * 4
    const: Fraction = Fraction(0)
    reduced: bool = field(default=False, compare=False)

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise ValueError("a weight expression has exactly 4 basis coefficients")
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))
        object.__setattr__(self, "const", as_fraction(self.const))

    @classmethod
    def symbol(cls, name: str) -> "WeightExpr":
        coeffs = [Fraction(0)] * 4
        coeffs[_INDEX[name]] = Fraction(1)
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, value: Union[Number, str]) -> "WeightExpr":
        return cls(const=as_fraction(value))

    @classmethod
    def zero(cls) -> "WeightExpr":
        return cls()

    @classmethod
    def parse(cls, text: str) -> "WeightExpr":
        """Parse strings such as ``"z+2x-1/2y+3"`` or ``"5/3"``."""
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty weight expression")
        terms = re.findall(r"[+-]?[^+-]+", src)
        if "".join(terms) != src:
            raise ValueError(f"cannot parse weight expression {text!r}")
        coeffs = [Fraction(0)] * 4
        const = Fraction(0)
        for term in terms:
            m = re.fullmatch(r"([+-]?)(\d+(?:/\d+)?)?\*?([zxyt])?", term)
            if m is None or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse term {term!r} in {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            num = Fraction(m.group(2)) if m.group(2) is not None else Fraction(1)
            if m.group(3) is None:
                const += sign * num
            else:
                coeffs[_INDEX[m.group(3)]] += sign * num
        return cls(tuple(coeffs), const)

    def __add__(self, other: "WeightExpr") -> "WeightExpr":
        if not isinstance(other, WeightExpr):
            return NotImplemented
        return WeightExpr(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            self.const + other.const,
        )

    def __sub__(self, other: "WeightExpr") -> "WeightExpr":
        if not isinstance(other, WeightExpr):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "WeightExpr":
        return WeightExpr(tuple(-c for c in self.coeffs), -self.const)

    def __mul__(self, k: Number) -> "WeightExpr":
        if isinstance(k, WeightExpr) or isinstance(k, float):
            return NotImplemented
        k = Fraction(k)
        return WeightExpr(tuple(k * c for c in self.coeffs), k * self.const)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.const != 0 or any(self.coeffs)

    def vector(self) -> tuple:
        """Coefficients followed by the constant term."""
        return self.coeffs + (self.const,)

    @property
    def is_constant(self) -> bool:
        return not any(self.coeffs)

    def coefficient(self, name: str) -> Fraction:
        return self.coeffs[_INDEX[name]]

    def coefficient_sum(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        total = self.const
        for name, c in zip(BASIS, self.coeffs):
            if c:
                total += c * as_fraction(values[name])
        return total

    def substitute(self, values: Mapping[str, Number]) -> "WeightExpr":
        """Replace the given symbols by rational values."""
        coeffs = list(self.coeffs)
        const = self.const
        for name, v in values.items():
            i = _INDEX[name]
            const += coeffs[i] * as_fraction(v)
            coeffs[i] = Fraction(0)
        return WeightExpr(tuple(coeffs), const)

    def __str__(self) -> str:
        parts = []
        for name, c in zip(BASIS, self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            body = name if mag == 1 else f"{mag}{name}"
            parts.append(("-" if c < 0 else "+") + body)
        if self.const != 0 or not parts:
            parts.append(("-" if self.const < 0 else "+") + str(abs(self.const)))
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    def __repr__(self) -> str:
        return f"WeightExpr({str(self)!r})"


def wsum(exprs: Iterable[WeightExpr]) -> WeightExpr:
    total = WeightExpr.zero()
    for e in exprs:
        total = total + e
    return total


Z = WeightExpr.symbol("z")
X = WeightExpr.symbol("x")
Y = WeightExpr.symbol("y")
T = WeightExpr.symbol("t")


class RelationError(ValueError):
    pass


@dataclass(frozen=True)
class RelationSet:
    """Linear relations ``expr == 0`` over the basis plus declared inequations.

    Relations are put in echelon form on construction: each one is solved for
    its highest basis symbol (t before y before x before z) and the solutions
    are back-substituted into each other, so a single pass of substitutions
    yields a canonical normal form.
    """

    relations: tuple = ()
    inequations: tuple = ()
    _pivots: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        pivots: dict[int, WeightExpr] = {}
        for rel in self.relations:
            if not rel.is_constant and rel.const != 0:
                raise RelationError("relations may not carry a constant term")
            expr = _apply(rel, pivots)
            if not any(expr.coeffs):
                raise RelationError(f"relation {rel} is redundant or inconsistent")
            piv = max(i for i, c in enumerate(expr.coeffs) if c)
            # expr = c*s + rest = 0  ->  s = -rest / c
            c = expr.coeffs[piv]
            rest = list(expr.coeffs)
            rest[piv] = Fraction(0)
            sol = WeightExpr(tuple(-r / c for r in rest))
            pivots = {k: _apply(v, {piv: sol}) for k, v in pivots.items()}
            pivots[piv] = sol
        for a, b in self.inequations:
            if a not in _INDEX or b not in _INDEX:
                raise RelationError(f"unknown symbol in inequation {a}!={b}")
        object.__setattr__(self, "_pivots", tuple(sorted(pivots.items(), reverse=True)))

    @classmethod
    def empty(cls) -> "RelationSet":
        return cls()

    @property
    def eliminated(self) -> tuple:
        return tuple(BASIS[i] for i, _ in self._pivots)

    def substitutions(self) -> dict:
        return {BASIS[i]: e for i, e in self._pivots}

    def reduce(self, expr: WeightExpr) -> WeightExpr:
        out = _apply(expr, dict(self._pivots))
        return WeightExpr(out.coeffs, out.const, reduced=True)

    def violated_inequations(self, values: Mapping[str, Number] | None = None) -> list:
        """Inequations that fail, symbolically or for the given values."""
        bad = []
        for a, b in self.inequations:
            diff = self.reduce(WeightExpr.symbol(a) - WeightExpr.symbol(b))
            if values is not None:
                if diff.evaluate(values) == 0:
                    bad.append((a, b))
            elif not diff:
                bad.append((a, b))
        return bad

    def with_inequations(self, pairs: Iterable) -> "RelationSet":
        return RelationSet(self.relations, tuple(self.inequations) + tuple(pairs))


def _apply(expr: WeightExpr, pivots: Mapping[int, WeightExpr]) -> WeightExpr:
    coeffs = list(expr.coeffs)
    const = expr.const
    for piv in sorted(pivots, reverse=True):
        c = coeffs[piv]
        if not c:
            continue
        coeffs[piv] = Fraction(0)
        sol = pivots[piv]
        for i in range(4):
            coeffs[i] += c * sol.coeffs[i]
        const += c * sol.const
    return WeightExpr(tuple(coeffs), const)


def format_fraction(value: Fraction) -> str:
    return str(Fraction(value))
