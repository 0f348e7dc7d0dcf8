"""Unipotent affine systems on Z_q x T^d and their polynomial orbits.

The map is (c, x) -> (c + s mod q, x + N x + b) with N a nilpotent integer
matrix and b a vector of exact scalars.  Iterates have the closed form

    T^n x = x + sum_{r=0}^{d-1} binom(n, r+1) N^r (N x + b),

a polynomial identity valid for every integer n (negative included), which
is what makes exponents of size ~10^24 cheap.  Ergodicity is decided by the
invariant-character criterion: the torus part is totally ergodic iff no
nonzero integer vector l has l.N = 0 and l.b rational.  That criterion is
classical for this class and is cross-validated numerically in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import NotErgodic, NotIntegerValued
from .exactnum import ExactScalar
from .polyring import ExactPolynomial, binom_int, binomial_poly, is_integer_valued
from .ratlin import (
    identity,
    integer_kernel_basis,
    is_nilpotent,
    mat_mul,
    mat_pow,
    mat_vec,
    shortest_of,
)

IntMatrix = tuple[tuple[int, ...], ...]


def _as_matrix(rows) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class Point:
    """A point of Z_q x T^d; torus coordinates are stored mod one."""

    c: int
    x: tuple[ExactScalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(v.mod_one() for v in self.x))

    def numeric(self, registry) -> tuple[Fraction, ...]:
        return tuple(v.eval_mod1(registry) for v in self.x)


def point(c: int, coords) -> Point:
    xs = tuple(v if isinstance(v, ExactScalar) else ExactScalar(v) for v in coords)
    return Point(c, xs)


@dataclass(frozen=True)
class AffineSystem:
    """Phase space Z_q x T^d with the map (c, x) -> (c+s, x + Nx + b)."""

    q: int
    s: int
    matrix: IntMatrix
    translation: tuple[ExactScalar, ...]
    label: str = ""

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be a positive integer")
        object.__setattr__(self, "s", self.s % self.q)
        object.__setattr__(self, "matrix", _as_matrix(self.matrix))
        object.__setattr__(
            self,
            "translation",
            tuple(
                (v if isinstance(v, ExactScalar) else ExactScalar(v)).mod_one()
                for v in self.translation
            ),
        )
        d = len(self.translation)
        if len(self.matrix) != d or any(len(row) != d for row in self.matrix):
            raise ValueError("matrix shape does not match translation length")
        if not is_nilpotent([list(r) for r in self.matrix], d):
            raise ValueError("matrix is not nilpotent (N^d != 0)")

    @property
    def d(self) -> int:
        return len(self.translation)

    def apply(self, p: Point) -> Point:
        """One application of the defining map (the iterate formula's oracle)."""
        nx = mat_vec([list(r) for r in self.matrix], list(p.x)) if self.d else []
        coords = tuple(p.x[i] + nx[i] + self.translation[i] for i in range(self.d))
        return Point((p.c + self.s) % self.q, coords)

    def orbit_vectors(self, p: Point) -> tuple[tuple[ExactScalar, ...], ...]:
        """v_r = N^r (N x + b) for r = 0..d-1."""
        return _orbit_vectors(self, p)

    def iterate(self, p: Point, n: int) -> Point:
        """T^n p by the closed form; n may be negative or astronomically large."""
        c = (p.c + n * self.s) % self.q
        if self.d == 0:
            return Point(c, ())
        vs = self.orbit_vectors(p)
        coords = []
        for j in range(self.d):
            acc = p.x[j]
            for r in range(self.d):
                coeff = binom_int(n, r + 1)
                if coeff:
                    acc = acc + vs[r][j] * coeff
            coords.append(acc.mod_one())
        return Point(c, tuple(coords))

    def orbit_polynomial(self, p: Point, e: ExactPolynomial) -> "OrbitPolynomials":
        """Coordinate polynomials of (m, n) -> T^{e(m,n)} p, plus the finite part.

        Coordinate j of the result, evaluated at integer (m, n), equals
        coordinate j of iterate(p, e(m, n)) before reduction mod one.
        """
        if not is_integer_valued(e):
            raise NotIntegerValued(f"exponent {e!r} is not integer-valued on Z^2")
        vs = self.orbit_vectors(p)
        coords = []
        for j in range(self.d):
            poly = ExactPolynomial.constant(p.x[j])
            for r in range(self.d):
                if vs[r][j]:
                    poly = poly + binomial_poly(e, r + 1).scale(vs[r][j])
            coords.append(poly)
        return OrbitPolynomials(tuple(coords), FiniteOrbitForm(p.c, self.s, self.q, e))

    def power_system(self, r: int) -> "AffineSystem":
        """The system of T^r on the same phase space (r >= 1)."""
        if r < 1:
            raise ValueError("power must be >= 1")
        d = self.d
        unip = [[self.matrix[i][j] + (i == j) for j in range(d)] for i in range(d)]
        total = mat_pow(unip, r)
        n_new = [[total[i][j] - (i == j) for j in range(d)] for i in range(d)]
        geom = identity(d)
        acc = identity(d)
        for _ in range(r - 1):
            acc = mat_mul(acc, unip)
            geom = [[geom[i][j] + acc[i][j] for j in range(d)] for i in range(d)]
        b_new = mat_vec(geom, list(self.translation)) if d else []
        return AffineSystem(
            self.q, (self.s * r) % self.q, _as_matrix(n_new), tuple(b_new),
            label=f"{self.label}^{r}" if self.label else "",
        )

    def invariant_character_witness(self) -> list[int] | None:
        """Nonzero l with l.N = 0 and l.b rational, or None if none exists.

        None means the torus part is totally ergodic (equivalently ergodic:
        on a connected torus the two coincide for unipotent affine maps).
        """
        d = self.d
        if d == 0:
            return None
        rows = [[self.matrix[i][j] for i in range(d)] for j in range(d)]
        gens = sorted({g for v in self.translation for g in v.parts})
        for g in gens:
            rows.append([self.translation[i].parts.get(g, Fraction(0)) for i in range(d)])
        basis = integer_kernel_basis(rows, d)
        if not basis:
            return None
        return shortest_of(basis)

    def is_ergodic(self) -> bool:
        return gcd(self.s, self.q) == 1 and self.invariant_character_witness() is None

    def ergodicity_period(self) -> int:
        """Least r such that T^r fixes each component {c} x T^d and is totally
        ergodic there.  Raises NotErgodic with a witness character otherwise."""
        g = gcd(self.s, self.q)
        if g != 1:
            j = self.q // g
            raise NotErgodic(
                f"finite part is not transitive (gcd(s, q) = {g}); "
                f"finite character j = {j} is invariant",
                witness=(j, [0] * self.d),
            )
        witness = self.invariant_character_witness()
        if witness is not None:
            raise NotErgodic(
                f"invariant-character test fails with l = {witness}",
                witness=(0, witness),
            )
        r = self.q
        # restriction of T^r to a component is totally ergodic automatically:
        # l.N_r = 0 iff l.N = 0, and then l.b_r = r(l.b), rational iff l.b is
        assert self.power_system(r).invariant_character_witness() is None
        return r

    def eigenvalue_of(self, l: tuple[int, ...], j: int = 0) -> ExactScalar | None:
        """Phase l.b + j*s/q if the character (j, l) is an eigenfunction
        (that is, l.N = 0), else None."""
        d = self.d
        if any(sum(l[i] * self.matrix[i][k] for i in range(d)) != 0 for k in range(d)):
            return None
        acc = ExactScalar(Fraction(j * self.s, self.q) if self.q > 1 else 0)
        for i in range(d):
            acc = acc + self.translation[i] * l[i]
        return acc


@lru_cache(maxsize=4096)
def _orbit_vectors(sys: AffineSystem, p: Point):
    d = sys.d
    mat = [list(r) for r in sys.matrix]
    v = mat_vec(mat, list(p.x)) if d else []
    v = [v[i] + sys.translation[i] for i in range(d)]
    out = [tuple(v)]
    for _ in range(1, d):
        v = mat_vec(mat, v)
        out.append(tuple(v))
    return tuple(out)


@dataclass(frozen=True)
class FiniteOrbitForm:
    """Affine description of the finite part: (m, n) -> c0 + e(m, n) * s mod q."""

    c0: int
    s: int
    q: int
    exponent: ExactPolynomial

    def eval(self, m: int, n: int) -> int:
        e = self.exponent.eval(m, n)
        if not e.is_rational() or e.rational.denominator != 1:
            raise NotIntegerValued("exponent value is not an integer")
        return (self.c0 + int(e.rational) * self.s) % self.q


@dataclass(frozen=True)
class OrbitPolynomials:
    coords: tuple[ExactPolynomial, ...]
    finite: FiniteOrbitForm


# Spec-facing functional aliases.

def closed_form_iterate(sys: AffineSystem, p: Point, n: int) -> Point:
    return sys.iterate(p, n)


def orbit_polynomial(sys: AffineSystem, p: Point, e: ExactPolynomial) -> OrbitPolynomials:
    return sys.orbit_polynomial(p, e)


def ergodicity_period(sys: AffineSystem) -> int:
    return sys.ergodicity_period()


def rotation(translation, q: int = 1, s: int = 0, label: str = "") -> AffineSystem:
    """Rotation system: N = 0, translation vector as given."""
    coords = tuple(
        v if isinstance(v, ExactScalar) else ExactScalar(v) for v in translation
    )
    d = len(coords)
    zero = tuple(tuple(0 for _ in range(d)) for _ in range(d))
    return AffineSystem(q, s, zero, coords, label=label)


def skew_shear(alpha, shear: int = 2, extra=None, label: str = "") -> AffineSystem:
    """The planar skew (x, y) -> (x + alpha, y + shear*x + beta) on T^2.

    With beta = alpha and shear = 2 this is the standard quadratic-orbit
    example whose diagonal pair obstructs equidistribution without the
    extra averaging variable.
    """
    beta = extra if extra is not None else alpha
    return AffineSystem(
        1, 0, ((0, 0), (shear, 0)),
        (alpha if isinstance(alpha, ExactScalar) else ExactScalar(alpha),
         beta if isinstance(beta, ExactScalar) else ExactScalar(beta)),
        label=label,
    )
