"""Exact integer/rational linear algebra on small dense matrices.

Everything here runs over Python big integers and fractions.Fraction; no
floating point.  Matrices are lists of row lists.  Sizes in this package
stay tiny (dimension <= ~20, a few dozen rows), so clarity beats asymptotic
cleverness.
"""

from __future__ import annotations

import math
from fractions import Fraction


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def mat_vec(a, v):
    """Matrix times column vector; entries may be ints or ExactScalars."""
    out = []
    for row in a:
        acc = row[0] * v[0]
        for x, y in zip(row[1:], v[1:]):
            acc = acc + x * y
        out.append(acc)
    return out


def vec_mat(v, a):
    """Row vector times matrix, over exact entries."""
    cols = len(a[0]) if a else 0
    return [sum(v[i] * a[i][j] for i in range(len(a))) for j in range(cols)]


def mat_pow(a, k: int):
    """Nonnegative integer power by repeated squaring."""
    if k < 0:
        raise ValueError("negative matrix power")
    n = len(a)
    result = identity(n)
    base = [row[:] for row in a]
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def mat_pow_mod(a, k: int, mod: int):
    if k < 0:
        raise ValueError("negative matrix power")
    n = len(a)
    result = [[x % mod for x in row] for row in identity(n)]
    base = [[x % mod for x in row] for row in a]
    while k:
        if k & 1:
            result = [[sum(result[i][t] * base[t][j] for t in range(n)) % mod
                       for j in range(n)] for i in range(n)]
        base = [[sum(base[i][t] * base[t][j] for t in range(n)) % mod
                 for j in range(n)] for i in range(n)]
        k >>= 1
    return result


def is_nilpotent(n_mat, dim: int) -> bool:
    """True iff the dim x dim integer matrix satisfies N**dim == 0."""
    if dim == 0:
        return True
    power = mat_pow(n_mat, dim)
    return all(x == 0 for row in power for x in row)


def primitive(vec: list[int]) -> list[int]:
    """Divide by the gcd and make the first nonzero entry positive."""
    g = 0
    for x in vec:
        g = math.gcd(g, x)
    if g == 0:
        return list(vec)
    out = [x // g for x in vec]
    for x in out:
        if x != 0:
            if x < 0:
                out = [-y for y in out]
            break
    return out


def _to_integer_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        denom = 1
        for f in fracs:
            denom = denom * f.denominator // math.gcd(denom, f.denominator)
        out.append([int(f * denom) for f in fracs])
    return out


def integer_kernel_basis(rows, ncols: int) -> list[list[int]]:
    """Saturated basis of the lattice {x in Z^ncols : A x = 0}.

    Rows may be rational; each is scaled to integers (kernel unchanged).
    Column reduction with unimodular gcd steps is tracked in U, so the
    returned vectors form a genuine lattice basis (primitive, saturated),
    not just a finite-index sublattice.
    """
    m = _to_integer_rows(rows)
    u = identity(ncols)

    def col_combine(j, k, x, y, aa, bb):
        # col_j <- x*col_j + y*col_k ; col_k <- -(bb)*col_j_old + (aa)*col_k_old
        for mat in (m, u):
            for row in mat:
                cj, ck = row[j], row[k]
                row[j] = x * cj + y * ck
                row[k] = aa * ck - bb * cj

    pivot_cols: set[int] = set()
    for r in range(len(m)):
        # Clear row r across all non-pivot columns, leaving one pivot.
        active = [j for j in range(ncols) if j not in pivot_cols and m[r][j] != 0]
        if not active:
            continue
        j = active[0]
        for k in active[1:]:
            a, b = m[r][j], m[r][k]
            if a == 0:
                for mat in (m, u):
                    for row in mat:
                        row[j], row[k] = row[k], row[j]
                continue
            g, x, y = _xgcd(a, b)
            col_combine(j, k, x, y, a // g, b // g)
        pivot_cols.add(j)

    basis = []
    for j in range(ncols):
        if j in pivot_cols:
            continue
        if all(m[r][j] == 0 for r in range(len(m))):
            basis.append([u[i][j] for i in range(ncols)])
    return basis


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with x*a + y*b == g == gcd(a, b), g > 0 for nonzero input."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    Echelon over Z with positive pivots and entries above each pivot
    reduced into [0, pivot).  Zero rows are dropped.  Used to present
    kernel-lattice bases deterministically.
    """
    mat = [list(row) for row in rows]
    if not mat:
        return []
    nrows, ncols = len(mat), len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= nrows:
            break
        # gcd-reduce entries of this column below pivot_row into one row
        for r in range(pivot_row + 1, nrows):
            a, b = mat[pivot_row][col], mat[r][col]
            if b == 0:
                continue
            if a == 0:
                mat[pivot_row], mat[r] = mat[r], mat[pivot_row]
                continue
            g, x, y = _xgcd(a, b)
            aa, bb = a // g, b // g
            row_p, row_r = mat[pivot_row], mat[r]
            mat[pivot_row] = [x * p + y * q for p, q in zip(row_p, row_r)]
            mat[r] = [aa * q - bb * p for p, q in zip(row_p, row_r)]
        if mat[pivot_row][col] == 0:
            continue
        if mat[pivot_row][col] < 0:
            mat[pivot_row] = [-x for x in mat[pivot_row]]
        piv = mat[pivot_row][col]
        for r in range(pivot_row):
            q = mat[r][col] // piv
            if q:
                mat[r] = [x - q * y for x, y in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
    return [row for row in mat[:pivot_row] if any(row)]


def shortest_of(basis: list[list[int]]) -> list[int]:
    """Deterministic representative: minimal (max-abs, sum-abs, lex) vector."""
    def key(v):
        return (max(abs(x) for x in v), sum(abs(x) for x in v), v)

    return min((primitive(v) for v in basis), key=key)
