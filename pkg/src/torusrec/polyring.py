"""Sparse polynomials in the formal variables m and n.

IntPolynomial has integer coefficients (the input polynomials p_i of a
recurrence experiment); ExactPolynomial has ExactScalar coefficients and
is what orbit computations produce.  Keys are (deg_m, deg_n) pairs, zero
coefficients are never stored.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import ConfigError, LimitExceeded, NotIntegerValued
from .exactnum import ExactScalar
from .ratlin import integer_kernel_basis, primitive, shortest_of

Monomial = tuple[int, int]

MAX_BINOMIAL_ORDER = 12


def binom_int(n: int, k: int) -> int:
    """Integer binomial via the degree-k polynomial extension.

    Valid for every integer n, including negative (binom(-2,3) == -4) and
    astronomically large arguments; always exact.
    """
    if k < 0:
        raise ValueError("binomial order must be >= 0")
    if k == 0:
        return 1
    if n >= 0:
        return math.comb(n, k)
    # falling factorial; the product of k consecutive integers is divisible by k!
    num = 1
    for i in range(k):
        num *= n - i
    return num // math.factorial(k)


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[Monomial, int] | None = None):
        clean = {}
        for key, c in (coeffs or {}).items():
            if not isinstance(c, int):
                raise TypeError(f"IntPolynomial coefficient {c!r} is not an integer")
            if c != 0:
                clean[(int(key[0]), int(key[1]))] = c
        self.coeffs = clean

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def variable(cls, name: str) -> "IntPolynomial":
        if name == "m":
            return cls({(1, 0): 1})
        if name == "n":
            return cls({(0, 1): 1})
        raise ValueError(f"unknown variable {name!r}")

    def degree(self) -> int:
        return max((a + b for a, b in self.coeffs), default=0)

    def degree_n(self) -> int:
        return max((b for _, b in self.coeffs), default=0)

    def constant_term(self) -> int:
        return self.coeffs.get((0, 0), 0)

    def eval(self, m: int, n: int) -> int:
        return sum(c * m**a * n**b for (a, b), c in self.coeffs.items())

    def __add__(self, other):
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return IntPolynomial(out)

    def __neg__(self):
        return IntPolynomial({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "IntPolynomial":
        return IntPolynomial({k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        return f"IntPolynomial({format_poly(self.coeffs)!r})"

    def text(self) -> str:
        return format_poly(self.coeffs)

    def to_exact(self) -> "ExactPolynomial":
        return ExactPolynomial({k: ExactScalar(c) for k, c in self.coeffs.items()})


class ExactPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[Monomial, ExactScalar] | None = None):
        clean = {}
        for key, c in (coeffs or {}).items():
            if not isinstance(c, ExactScalar):
                c = ExactScalar(c)
            if c:
                clean[(int(key[0]), int(key[1]))] = c
        self.coeffs = clean

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def constant(cls, c) -> "ExactPolynomial":
        return cls({(0, 0): c if isinstance(c, ExactScalar) else ExactScalar(c)})

    def degree(self) -> int:
        return max((a + b for a, b in self.coeffs), default=0)

    def coefficient(self, key: Monomial) -> ExactScalar:
        return self.coeffs.get(key, ExactScalar(0))

    def constant_coefficient(self) -> ExactScalar:
        return self.coefficient((0, 0))

    def nonconstant_monomials(self) -> list[Monomial]:
        return sorted(k for k in self.coeffs if k != (0, 0))

    def has_rational_coeffs(self) -> bool:
        return all(c.is_rational() for c in self.coeffs.values())

    def eval(self, m: int, n: int) -> ExactScalar:
        total = ExactScalar(0)
        for (a, b), c in self.coeffs.items():
            total = total + c * (m**a * n**b)
        return total

    def __add__(self, other):
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, ExactScalar(0)) + c
        return ExactPolynomial(out)

    def __neg__(self):
        return ExactPolynomial({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExactPolynomial":
        return ExactPolynomial({k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        out: dict[Monomial, ExactScalar] = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                key = (a1 + a2, b1 + b2)
                prod = c1 * c2  # raises if both carry generator parts
                out[key] = out.get(key, ExactScalar(0)) + prod
        return ExactPolynomial(out)

    def compose_affine(self, m0: int, n0: int, step: int) -> "ExactPolynomial":
        """Substitute m -> m0 + step*m, n -> n0 + step*n."""
        out: dict[Monomial, ExactScalar] = {}
        for (a, b), c in self.coeffs.items():
            for u in range(a + 1):
                mu = math.comb(a, u) * m0 ** (a - u) * step**u
                for v in range(b + 1):
                    nv = math.comb(b, v) * n0 ** (b - v) * step**v
                    key = (u, v)
                    out[key] = out.get(key, ExactScalar(0)) + c * (mu * nv)
        return ExactPolynomial(out)

    def __eq__(self, other):
        return isinstance(other, ExactPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        body = " + ".join(
            f"({c.text()})*m^{a}n^{b}" for (a, b), c in sorted(self.coeffs.items())
        )
        return f"ExactPolynomial({body or '0'})"


def binomial_poly(e: ExactPolynomial, k: int) -> ExactPolynomial:
    """Expansion of binom(e, k) = e(e-1)...(e-k+1)/k! as a polynomial.

    Evaluating the result at integer (m, n) equals binom_int(e(m, n), k),
    negative arguments included.  Requires rational coefficients (products
    of polynomials with generator parts leave the representation).
    """
    if not 0 <= k <= MAX_BINOMIAL_ORDER:
        raise LimitExceeded(f"binomial order {k} outside [0, {MAX_BINOMIAL_ORDER}]")
    result = ExactPolynomial.constant(1)
    for i in range(k):
        result = result * (e - ExactPolynomial.constant(i))
    return result.scale(Fraction(1, math.factorial(k)))


def binomial_basis_coeffs(e: ExactPolynomial) -> dict[Monomial, Fraction]:
    """Coefficients of e in the basis binom(m,i)*binom(n,j), via finite differences.

    Only defined for rational-coefficient polynomials.  e is integer-valued
    on Z^2 iff every returned coefficient is an integer.
    """
    if not e.has_rational_coeffs():
        raise NotIntegerValued("polynomial has irrational coefficients")
    deg_m = max((a for a, _ in e.coeffs), default=0)
    deg_n = max((b for _, b in e.coeffs), default=0)
    grid = [
        [e.eval(i, j).rational for j in range(deg_n + 1)] for i in range(deg_m + 1)
    ]
    # forward differences in m then n; entry (i, j) becomes the basis coefficient
    for i in range(1, deg_m + 1):
        for r in range(deg_m, i - 1, -1):
            for j in range(deg_n + 1):
                grid[r][j] -= grid[r - 1][j]
    for j in range(1, deg_n + 1):
        for s in range(deg_n, j - 1, -1):
            for i in range(deg_m + 1):
                grid[i][s] -= grid[i][s - 1]
    return {
        (i, j): grid[i][j]
        for i in range(deg_m + 1)
        for j in range(deg_n + 1)
        if grid[i][j] != 0
    }


def is_integer_valued(e: ExactPolynomial) -> bool:
    if not e.has_rational_coeffs():
        return False
    return all(c.denominator == 1 for c in binomial_basis_coeffs(e).values())


class Independence:
    """Verdict of a rational-independence test."""

    __slots__ = ("independent", "witness")

    def __init__(self, independent: bool, witness: list[int] | None = None):
        self.independent = independent
        self.witness = witness

    def __bool__(self):
        return self.independent

    def __repr__(self):
        if self.independent:
            return "Independent"
        return f"Dependent(witness={self.witness})"


def rational_independence(
    ps: list[IntPolynomial], include_constants: bool = False
) -> Independence:
    """Decide whether some nontrivial rational combination of ps vanishes.

    With include_constants=True the combination only needs to be a constant
    polynomial ("rationally independent from 1").  Dependent verdicts carry
    a coprime integer witness with positive leading entry; substituting it
    back yields the zero (or constant) polynomial exactly.
    """
    if not ps:
        raise ValueError("empty polynomial list")
    monomials = sorted({k for p in ps for k in p.coeffs})
    if include_constants:
        monomials = [k for k in monomials if k != (0, 0)]
    rows = [[p.coeffs.get(k, 0) for p in ps] for k in monomials]
    basis = integer_kernel_basis(rows, len(ps))
    if not basis:
        return Independence(True)
    witness = primitive(shortest_of(basis))
    return Independence(False, witness)


_TERM_RE = re.compile(
    r"^(?P<coeff>[+-]?\s*\d*)\s*\*?\s*(?P<vars>(?:[mn](?:\s*\^\s*\d+)?\s*\*?\s*)*)$"
)
_VAR_RE = re.compile(r"([mn])(?:\s*\^\s*(\d+))?")


def parse_int_polynomial(text: str) -> IntPolynomial:
    """Parse sparse term syntax: "n^2 + 3n", "m + n^4", "2mn", "-m^2".

    Coefficients must be integers; anything else is a ConfigError.
    """
    cleaned = text.replace("**", "^").strip()
    if not cleaned:
        raise ConfigError("empty polynomial")
    if cleaned == "0":
        return IntPolynomial.zero()
    # normalize to explicit signed terms
    cleaned = cleaned.replace("-", "+-")
    chunks = [c.strip() for c in cleaned.split("+")]
    chunks = [c for c in chunks if c]
    coeffs: dict[Monomial, int] = {}
    for chunk in chunks:
        match = _TERM_RE.match(chunk)
        if not match:
            raise ConfigError(f"bad polynomial term {chunk!r} in {text!r}")
        raw = match.group("coeff").replace(" ", "")
        if raw in ("", "+"):
            c = 1
        elif raw == "-":
            c = -1
        else:
            c = int(raw)
        dm = dn = 0
        for var, exp in _VAR_RE.findall(match.group("vars")):
            e = int(exp) if exp else 1
            if var == "m":
                dm += e
            else:
                dn += e
        key = (dm, dn)
        coeffs[key] = coeffs.get(key, 0) + c
    return IntPolynomial(coeffs)


def format_poly(coeffs: dict[Monomial, int]) -> str:
    if not coeffs:
        return "0"
    parts = []
    for (a, b), c in sorted(coeffs.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), kv[0])):
        var = ""
        if a:
            var += "m" + (f"^{a}" if a > 1 else "")
        if b:
            var += "n" + (f"^{b}" if b > 1 else "")
        if not var:
            parts.append(str(c))
        elif c == 1:
            parts.append(var)
        elif c == -1:
            parts.append(f"-{var}")
        else:
            parts.append(f"{c}{var}")
    text = " + ".join(parts)
    return text.replace("+ -", "- ")
