"""Exact arithmetic in Q-linear expressions over named formal irrationals.

An ExactScalar is ``q0 + sum_g q_g * g`` where q0 and the q_g are exact
rationals and the g are generator names from a GeneratorRegistry.  The
generators are *assumed* rationally independent (together with 1); the
registry records the construction recipe (e.g. "sqrt(2)-1") as provenance
and a high-precision rational approximation for the numeric path.

The exact path never touches floating point.  Numeric evaluation is exact
arithmetic over the registry's rational approximations, so the only error
is the approximation error of the registry values themselves, which is
bounded by sum |q_g| * 10**-precision.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from typing import Mapping, Union

from .errors import ConfigError, UnknownGenerator

Rat = Union[int, Fraction]

DEFAULT_PRECISION = 64


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class ExactScalar:
    """q0 + sum of rational multiples of registered generators, canonical form.

    Canonical means zero coefficients are absent from ``parts``.  Values are
    immutable; all operations return new scalars.
    """

    __slots__ = ("rational", "parts")

    def __init__(self, rational: Rat = 0, parts: Mapping[str, Rat] | None = None):
        object.__setattr__(self, "rational", _frac(rational))
        clean = {}
        if parts:
            for name, coeff in parts.items():
                c = _frac(coeff)
                if c != 0:
                    clean[name] = c
        object.__setattr__(self, "parts", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def generator(cls, name: str, coeff: Rat = 1) -> "ExactScalar":
        return cls(0, {name: coeff})

    def is_rational(self) -> bool:
        """True iff the generator part is empty (the value lies in Q)."""
        return not self.parts

    def __add__(self, other) -> "ExactScalar":
        other = _coerce(other)
        parts = dict(self.parts)
        for name, coeff in other.parts.items():
            parts[name] = parts.get(name, Fraction(0)) + coeff
        return ExactScalar(self.rational + other.rational, parts)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.rational, {g: -c for g, c in self.parts.items()})

    def __sub__(self, other) -> "ExactScalar":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "ExactScalar":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "ExactScalar":
        other = _coerce(other)
        if self.parts and other.parts:
            raise ValueError(
                "product of two scalars with generator parts leaves the "
                "Q-linear representation; one factor must be rational"
            )
        if other.parts:
            self, other = other, self
        c = other.rational
        return ExactScalar(self.rational * c, {g: q * c for g, q in self.parts.items()})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ExactScalar":
        other = _coerce(other)
        if other.parts:
            raise ValueError("division by a scalar with generator parts")
        if other.rational == 0:
            raise ZeroDivisionError("ExactScalar division by zero")
        return self * (Fraction(1) / other.rational)

    def mod_one(self) -> "ExactScalar":
        """Subtract the floor of the rational part (generator parts unchanged).

        Two scalars name the same torus coordinate iff their difference has
        empty generator parts and integer rational part; after mod_one that
        reduces to plain equality whenever the generator parts agree.
        """
        return ExactScalar(self.rational - math.floor(self.rational), self.parts)

    def eval_numeric(self, registry: "GeneratorRegistry") -> Fraction:
        """Exact evaluation over the registry's rational approximations."""
        total = self.rational
        for name, coeff in self.parts.items():
            total += coeff * registry.value_of(name)
        return total

    def eval_mod1(self, registry: "GeneratorRegistry") -> Fraction:
        v = self.eval_numeric(registry)
        return v - math.floor(v)

    def __eq__(self, other):
        if not isinstance(other, (ExactScalar, int, Fraction)):
            return NotImplemented
        other = _coerce(other)
        return self.rational == other.rational and self.parts == other.parts

    def __hash__(self):
        return hash((self.rational, frozenset(self.parts.items())))

    def __bool__(self):
        return self.rational != 0 or bool(self.parts)

    def __repr__(self):
        if not self.parts:
            return f"ExactScalar({self.rational})"
        terms = " + ".join(f"{c}*{g}" for g, c in sorted(self.parts.items()))
        return f"ExactScalar({self.rational} + {terms})"

    def text(self) -> str:
        """Config-syntax rendering, e.g. ``1/2 + 3*alpha``."""
        pieces = []
        if self.rational != 0 or not self.parts:
            pieces.append(str(self.rational))
        for g, c in sorted(self.parts.items()):
            pieces.append(f"{c}*{g}")
        return " + ".join(pieces)


ZERO = ExactScalar(0)


def _coerce(x) -> ExactScalar:
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar(x)
    raise TypeError(f"cannot coerce {x!r} to ExactScalar")


# Spec-facing functional aliases.

def is_rational(s: ExactScalar) -> bool:
    return s.is_rational()


def mod_one(s: ExactScalar) -> ExactScalar:
    return s.mod_one()


def eval_numeric(s: ExactScalar, registry: "GeneratorRegistry") -> Fraction:
    return s.eval_numeric(registry)


def sqrt_approx(n: int, digits: int) -> Fraction:
    """Rational approximation of sqrt(n), correct to ``digits`` decimals."""
    if n < 0:
        raise ValueError("sqrt of a negative integer")
    scale = 10 ** digits
    return Fraction(math.isqrt(n * scale * scale), scale)


class _RecipeEval(ast.NodeTransformer):
    pass


def eval_recipe(text: str, digits: int) -> Fraction:
    """Evaluate a generator recipe such as ``sqrt(2)-1`` or ``sqrt(5)/2``.

    Grammar: integers, + - * /, parentheses, and sqrt(<nonnegative int>).
    The result is an exact rational approximation at ``digits`` decimals.
    """
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ConfigError(f"bad recipe {text!r}: {exc}") from None

    def walk(node) -> Fraction:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int):
                return Fraction(node.value)
            raise ConfigError(f"recipe {text!r}: only integer literals allowed")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -walk(node.operand)
        if isinstance(node, ast.BinOp):
            a, b = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
            raise ConfigError(f"recipe {text!r}: unsupported operator")
        if isinstance(node, ast.Call):
            if isinstance(node.func, ast.Name) and node.func.id == "sqrt" and len(node.args) == 1:
                arg = walk(node.args[0])
                if arg.denominator != 1:
                    raise ConfigError(f"recipe {text!r}: sqrt takes an integer")
                return sqrt_approx(arg.numerator, digits)
            raise ConfigError(f"recipe {text!r}: only sqrt(<int>) calls allowed")
        raise ConfigError(f"recipe {text!r}: unsupported syntax")

    return walk(tree)


class GeneratorRegistry:
    """Ordered registry of named formal irrationals with numeric values.

    Each generator carries its construction recipe (provenance text) and a
    rational approximation at the registry precision.  Uniqueness of names
    is enforced; rational independence is an assumption recorded by the
    recipe, never checked.
    """

    def __init__(self, precision: int = DEFAULT_PRECISION):
        if precision < 8:
            raise ValueError("precision below 8 digits loses the fractional parts")
        self.precision = precision
        self.names: list[str] = []
        self.numeric_values: dict[str, Fraction] = {}
        self.recipes: dict[str, str] = {}

    def declare(self, name: str, recipe: str | None = None, value=None) -> str:
        """Register a generator by recipe (evaluated here) or decimal string."""
        if name in self.numeric_values:
            raise ConfigError(f"generator {name!r} declared twice")
        if not name.isidentifier():
            raise ConfigError(f"generator name {name!r} is not an identifier")
        if recipe is not None:
            approx = eval_recipe(recipe, self.precision)
            self.recipes[name] = recipe
        elif value is not None:
            approx = _frac(value)
            self.recipes[name] = f"literal {value}"
        else:
            raise ConfigError(f"generator {name!r}: need a recipe or a value")
        self.names.append(name)
        self.numeric_values[name] = approx
        return name

    def value_of(self, name: str) -> Fraction:
        try:
            return self.numeric_values[name]
        except KeyError:
            raise UnknownGenerator(f"generator {name!r} is not registered") from None

    def __contains__(self, name):
        return name in self.numeric_values


def default_registry(precision: int = DEFAULT_PRECISION) -> GeneratorRegistry:
    """Registry with the two staple generators used in demos and tests."""
    reg = GeneratorRegistry(precision)
    reg.declare("alpha", recipe="sqrt(2)-1")
    reg.declare("beta", recipe="sqrt(3)-1")
    return reg


def parse_scalar(text: str, registry: GeneratorRegistry | None = None) -> ExactScalar:
    """Parse an ExactScalar expression such as ``1/2 + 3*alpha - beta/4``.

    Rationals must be written as integer ratios (``1/2``), not decimals, so
    the parse stays exact.  Names must be registered generators when a
    registry is supplied.
    """
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ConfigError(f"bad scalar {text!r}: {exc}") from None

    def walk(node) -> ExactScalar:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int):
                return ExactScalar(node.value)
            raise ConfigError(
                f"scalar {text!r}: write rationals as p/q, decimals are not exact"
            )
        if isinstance(node, ast.Name):
            if registry is not None and node.id not in registry:
                raise ConfigError(f"scalar {text!r}: unknown generator {node.id!r}")
            return ExactScalar.generator(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -walk(node.operand)
        if isinstance(node, ast.BinOp):
            a, b = walk(node.left), walk(node.right)
            try:
                if isinstance(node.op, ast.Add):
                    return a + b
                if isinstance(node.op, ast.Sub):
                    return a - b
                if isinstance(node.op, ast.Mult):
                    return a * b
                if isinstance(node.op, ast.Div):
                    return a / b
            except (ValueError, ZeroDivisionError) as exc:
                raise ConfigError(f"scalar {text!r}: {exc}") from None
            raise ConfigError(f"scalar {text!r}: unsupported operator")
        raise ConfigError(f"scalar {text!r}: unsupported syntax")

    return walk(tree)
