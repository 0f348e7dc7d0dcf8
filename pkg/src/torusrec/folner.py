"""Averaging grids [1,N] x [1,b(N)] with named growth rules for b.

The recurrence averages need b(N) -> infinity with b(N)/N^(1/d) -> 0 for
the relevant degree d; whether a rule satisfies that is decided
symbolically from the rule parameters, not sampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError


@dataclass(frozen=True)
class GrowthRule:
    """b(N) recipe.  kinds: "power" (floor N^gamma, min 2),
    "power_over_log" (floor N^gamma/ln N, min 2), "constant" (fixed b)."""

    kind: str
    gamma: Fraction = Fraction(0)
    value: int = 1

    def b_of(self, n: int) -> int:
        if self.kind == "constant":
            return self.value
        if self.kind == "power":
            return max(2, _floor_power(n, self.gamma))
        if self.kind == "power_over_log":
            if n < 2:
                return 2
            return max(2, math.floor(_floor_power(n, self.gamma) / math.log(n)))
        raise ConfigError(f"unknown growth rule {self.kind!r}")

    def valid_for_degree(self, d: int) -> bool:
        """True iff b(N) -> inf and b(N)/N^(1/d) -> 0, decided from parameters."""
        if self.kind == "constant":
            return False
        if self.kind == "power":
            return 0 < self.gamma < Fraction(1, d)
        if self.kind == "power_over_log":
            return 0 < self.gamma <= Fraction(1, d)
        return False

    def describe(self) -> str:
        if self.kind == "constant":
            return f"b(N) = {self.value}"
        if self.kind == "power":
            return f"b(N) = max(2, floor(N^{self.gamma}))"
        return f"b(N) = max(2, floor(N^{self.gamma}/ln N))"


def _floor_power(n: int, gamma: Fraction) -> int:
    """floor(n**gamma) exactly, via integer root of n**numerator."""
    if n <= 0:
        raise ValueError("box size must be positive")
    p, q = gamma.numerator, gamma.denominator
    if p < 0:
        raise ValueError("negative growth exponent")
    root = _integer_root(n**p, q)
    return root


def _integer_root(x: int, k: int) -> int:
    """floor(x**(1/k)) for nonnegative integer x."""
    if x < 0:
        raise ValueError("negative radicand")
    if x in (0, 1) or k == 1:
        return x
    guess = int(round(x ** (1.0 / k)))
    while guess**k > x:
        guess -= 1
    while (guess + 1) ** k <= x:
        guess += 1
    return guess


def default_rule(degree: int) -> GrowthRule:
    """b(N) = max(2, floor(N^(1/(2 deg)))), valid for the degree with margin."""
    return GrowthRule("power", gamma=Fraction(1, 2 * max(1, degree)))


@dataclass(frozen=True)
class FolnerBox:
    """The grid [1, N] x [1, b(N)] realized from a growth rule."""

    N: int
    rule: GrowthRule

    @property
    def height(self) -> int:
        return self.rule.b_of(self.N)

    @property
    def size(self) -> int:
        return self.N * self.height

    def points(self):
        b = self.height
        for m in range(1, self.N + 1):
            for n in range(1, b + 1):
                yield m, n

    def progression_points(self, m0: int, n0: int, step: int):
        """Points (m0 + step*i, n0 + step*j) with (i, j) ranging over the box."""
        b = self.height
        for i in range(1, self.N + 1):
            for j in range(1, b + 1):
                yield m0 + step * i, n0 + step * j


def box(n: int, rule: GrowthRule | None = None, degree: int = 1) -> FolnerBox:
    return FolnerBox(n, rule if rule is not None else default_rule(degree))
