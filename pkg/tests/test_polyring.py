import random
from fractions import Fraction

import pytest
import sympy

from torusrec.errors import ConfigError, LimitExceeded
from torusrec.exactnum import ExactScalar
from torusrec.polyring import (
    ExactPolynomial,
    IntPolynomial,
    binom_int,
    binomial_basis_coeffs,
    binomial_poly,
    is_integer_valued,
    parse_int_polynomial,
    rational_independence,
)

M = IntPolynomial.variable("m")
N = IntPolynomial.variable("n")


def test_binom_int_matches_math_and_extends():
    assert binom_int(5, 2) == 10
    assert binom_int(-2, 3) == -4
    assert binom_int(3, 5) == 0
    assert binom_int(10**6, 4) == (10**6 * (10**6 - 1) * (10**6 - 2) * (10**6 - 3)) // 24


def test_binomial_poly_small_cases():
    got = binomial_poly(N.to_exact(), 2)
    want = ExactPolynomial({(0, 2): Fraction(1, 2), (0, 1): Fraction(-1, 2)})
    assert got == want


def test_binomial_poly_identity_k1():
    e = (M + IntPolynomial({(0, 2): 1})).to_exact()
    assert binomial_poly(e, 1) == e


def test_binomial_poly_sympy_oracle():
    # independent symbolic oracle: expand (m+n)(m+n-1)/2 with sympy
    m, n = sympy.symbols("m n")
    expanded = sympy.Poly(sympy.expand((m + n) * (m + n - 1) / 2), m, n)
    got = binomial_poly((M + N).to_exact(), 2)
    for (a, b), coeff in got.coeffs.items():
        want = expanded.coeff_monomial(m**a * n**b)
        assert Fraction(str(want)) == coeff.rational
    assert len(got.coeffs) == len(expanded.as_dict())


def test_binomial_poly_random_integer_agreement():
    rng = random.Random(11)
    e = (M.scale(3) + IntPolynomial({(0, 2): 1, (0, 1): -2})).to_exact()
    for k in (1, 2, 3, 5):
        poly = binomial_poly(e, k)
        for _ in range(50):
            mm, nn = rng.randint(-50, 50), rng.randint(-50, 50)
            val = poly.eval(mm, nn)
            assert val.is_rational()
            assert val.rational == binom_int(int(e.eval(mm, nn).rational), k)


def test_binomial_poly_limit():
    with pytest.raises(LimitExceeded):
        binomial_poly(N.to_exact(), 13)


def test_rational_independence_examples():
    n2 = IntPolynomial({(0, 2): 1})
    assert rational_independence([N, n2], include_constants=True).independent
    verdict = rational_independence([N, N.scale(2)])
    assert not verdict.independent
    assert verdict.witness == [2, -1]
    verdict2 = rational_independence([n2 + N, n2, N])
    assert not verdict2.independent
    assert verdict2.witness == [1, -1, -1]


def test_independence_from_constants():
    one = IntPolynomial({(0, 0): 1})
    n_plus_1 = N + one
    # n+1 and n are dependent mod constants but independent as polynomials
    assert rational_independence([n_plus_1, N]).independent
    assert not rational_independence([n_plus_1, N], include_constants=True).independent


def test_independence_invariance():
    rng = random.Random(5)
    polys = [N, IntPolynomial({(0, 2): 1}), IntPolynomial({(1, 0): 1, (0, 3): 2})]
    base = rational_independence(polys).independent
    for _ in range(10):
        perm = polys[:]
        rng.shuffle(perm)
        scaled = [p.scale(rng.choice([-3, -1, 1, 2, 5])) for p in perm]
        assert rational_independence(scaled).independent == base


def test_dependent_witness_substitutes_to_zero():
    rng = random.Random(9)
    for _ in range(20):
        p1 = IntPolynomial({(0, 1): rng.randint(1, 5), (0, 2): rng.randint(-3, 3)})
        p2 = p1.scale(rng.randint(1, 4))
        p3 = IntPolynomial({(1, 0): rng.randint(-3, 3)})
        verdict = rational_independence([p1, p2, p3])
        assert not verdict.independent
        combo = IntPolynomial.zero()
        for c, p in zip(verdict.witness, [p1, p2, p3]):
            combo = combo + p.scale(c)
        assert combo == IntPolynomial.zero()


def test_integer_valuedness():
    assert is_integer_valued((M + N).to_exact())
    half_n2 = ExactPolynomial({(0, 2): Fraction(1, 2), (0, 1): Fraction(-1, 2)})
    assert is_integer_valued(half_n2)  # binom(n, 2)
    assert not is_integer_valued(ExactPolynomial({(0, 1): Fraction(1, 2)}))
    assert not is_integer_valued(ExactPolynomial({(0, 1): ExactScalar.generator("alpha")}))


def test_binomial_basis_coeffs():
    coeffs = binomial_basis_coeffs((M + N).to_exact())
    assert coeffs == {(1, 0): 1, (0, 1): 1}
    coeffs2 = binomial_basis_coeffs(ExactPolynomial({(0, 2): Fraction(1, 2), (0, 1): Fraction(-1, 2)}))
    assert coeffs2 == {(0, 2): 1}


def test_parse_int_polynomial():
    assert parse_int_polynomial("n^2 + 3n") == IntPolynomial({(0, 2): 1, (0, 1): 3})
    assert parse_int_polynomial("m + n^4") == IntPolynomial({(1, 0): 1, (0, 4): 1})
    assert parse_int_polynomial("2mn") == IntPolynomial({(1, 1): 2})
    assert parse_int_polynomial("-m^2 + m - 7") == IntPolynomial(
        {(2, 0): -1, (1, 0): 1, (0, 0): -7}
    )
    assert parse_int_polynomial("0") == IntPolynomial.zero()
    assert parse_int_polynomial("n - n") == IntPolynomial.zero()
    with pytest.raises(ConfigError):
        parse_int_polynomial("n/2")
    with pytest.raises(ConfigError):
        parse_int_polynomial("x^2")


def test_format_round_trip():
    for text in ["n^2 + 3n", "m + n^4", "2mn", "-m^2 + m - 7"]:
        p = parse_int_polynomial(text)
        assert parse_int_polynomial(p.text()) == p


def test_eval_exact_polynomial():
    p = ExactPolynomial({(1, 0): ExactScalar.generator("alpha"), (0, 0): Fraction(1, 2)})
    v = p.eval(3, 0)
    assert v.parts == {"alpha": Fraction(3)}
    assert v.rational == Fraction(1, 2)


def test_compose_affine():
    p = IntPolynomial({(2, 0): 1, (0, 1): 1}).to_exact()  # m^2 + n
    comp = p.compose_affine(1, 2, 3)
    rng = random.Random(3)
    for _ in range(20):
        mm, nn = rng.randint(-10, 10), rng.randint(-10, 10)
        assert comp.eval(mm, nn) == p.eval(1 + 3 * mm, 2 + 3 * nn)
