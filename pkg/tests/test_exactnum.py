import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from torusrec.errors import ConfigError, UnknownGenerator
from torusrec.exactnum import (
    ExactScalar,
    GeneratorRegistry,
    default_registry,
    eval_recipe,
    parse_scalar,
    sqrt_approx,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**4)
gen_names = st.sampled_from(["alpha", "beta", "gamma", "delta"])
scalars = st.builds(
    ExactScalar,
    rationals,
    st.dictionaries(gen_names, rationals, max_size=4),
)


def test_is_rational_plain():
    assert ExactScalar(Fraction(3, 2)).is_rational()
    assert not ExactScalar(0, {"alpha": 1}).is_rational()


def test_is_rational_after_cancellation():
    # canonicalization oracle: sum the map entries independently
    s = ExactScalar(0, {"alpha": 2}) - ExactScalar(0, {"alpha": 2}) + 5
    entries = {}
    for term in [("alpha", Fraction(2)), ("alpha", Fraction(-2))]:
        entries[term[0]] = entries.get(term[0], Fraction(0)) + term[1]
    assert all(v == 0 for v in entries.values())
    assert s.is_rational()
    assert s.rational == 5


def test_mod_one_examples():
    assert ExactScalar(Fraction(7, 3)).mod_one() == ExactScalar(Fraction(1, 3))
    got = (ExactScalar(Fraction(-1, 4)) + ExactScalar.generator("alpha")).mod_one()
    assert got == ExactScalar(Fraction(3, 4), {"alpha": 1})
    assert ExactScalar(5).mod_one() == ExactScalar(0)


def test_eval_numeric_examples():
    reg = default_registry()
    assert ExactScalar(Fraction(1, 2)).eval_numeric(reg) == Fraction(1, 2)
    # high-precision oracle: mpmath at 80 digits
    with mpmath.workdps(80):
        want = mpmath.sqrt(2) - 1
        got = ExactScalar.generator("alpha").eval_numeric(reg)
        assert abs(mpmath.mpf(got.numerator) / got.denominator - want) < mpmath.mpf(10) ** -63
        want2 = 2 + 3 * (mpmath.sqrt(2) - 1)
        got2 = (ExactScalar(2) + ExactScalar.generator("alpha", 3)).eval_numeric(reg)
        assert abs(mpmath.mpf(got2.numerator) / got2.denominator - want2) < mpmath.mpf(10) ** -62
    assert float(got2) == pytest.approx(3.2426406871192848, abs=1e-12)


def test_eval_numeric_unknown_generator():
    reg = GeneratorRegistry()
    reg.declare("alpha", recipe="sqrt(2)-1")
    with pytest.raises(UnknownGenerator):
        ExactScalar.generator("nope").eval_numeric(reg)


@given(scalars, scalars, rationals)
def test_canonical_form_closure(a, b, c):
    for value in [(a + b).mod_one(), a * c, a - b]:
        assert all(coeff != 0 for coeff in value.parts.values())


@given(scalars)
def test_self_difference_rational(a):
    assert (a - a).is_rational()
    assert (a - a).rational == 0


@given(scalars, scalars, rationals)
def test_eval_is_homomorphism(a, b, c):
    reg = GeneratorRegistry(precision=32)
    for name in ["alpha", "beta", "gamma", "delta"]:
        reg.declare(name, recipe=f"sqrt({len(name)})-1")
    assert (a + b).eval_numeric(reg) == a.eval_numeric(reg) + b.eval_numeric(reg)
    assert (a * c).eval_numeric(reg) == a.eval_numeric(reg) * c
    assert (a - b).eval_numeric(reg) == a.eval_numeric(reg) - b.eval_numeric(reg)


@given(scalars)
def test_mod_one_idempotent_and_in_range(a):
    m = a.mod_one()
    assert 0 <= m.rational < 1
    assert m.mod_one() == m
    diff = a - m
    assert diff.is_rational() and diff.rational.denominator == 1


def test_generator_products_rejected():
    a = ExactScalar.generator("alpha")
    b = ExactScalar.generator("beta")
    with pytest.raises(ValueError):
        a * b
    assert (a * 2).parts == {"alpha": Fraction(2)}


def test_sqrt_approx_accuracy():
    v = sqrt_approx(2, 64)
    assert v * v <= 2
    assert (v + Fraction(1, 10**64)) ** 2 > 2


def test_eval_recipe():
    assert eval_recipe("3-1", 10) == 2
    v = eval_recipe("sqrt(2)-1", 40)
    assert abs(v - (sqrt_approx(2, 40) - 1)) == 0
    assert eval_recipe("sqrt(9)/3", 20) == 1
    with pytest.raises(ConfigError):
        eval_recipe("sqrt(2", 10)
    with pytest.raises(ConfigError):
        eval_recipe("__import__('os')", 10)


def test_registry_duplicate_and_bad_names():
    reg = GeneratorRegistry()
    reg.declare("alpha", recipe="sqrt(2)-1")
    with pytest.raises(ConfigError):
        reg.declare("alpha", recipe="sqrt(3)-1")
    with pytest.raises(ConfigError):
        reg.declare("not a name", recipe="sqrt(5)-2")
    assert reg.names == ["alpha"]


def test_parse_scalar():
    reg = default_registry()
    s = parse_scalar("1/2 + 3*alpha - beta/4", reg)
    assert s.rational == Fraction(1, 2)
    assert s.parts == {"alpha": Fraction(3), "beta": Fraction(-1, 4)}
    assert parse_scalar("-2", reg) == ExactScalar(-2)
    with pytest.raises(ConfigError):
        parse_scalar("0.5", reg)
    with pytest.raises(ConfigError):
        parse_scalar("alpha*beta", reg)
    with pytest.raises(ConfigError):
        parse_scalar("zeta", reg)


def test_declared_value_string():
    reg = GeneratorRegistry()
    reg.declare("phi", value="0.6180339887498948482045868343656381177203091798057628621354486227")
    v = reg.value_of("phi")
    assert math.isclose(float(v), (math.sqrt(5) - 1) / 2, abs_tol=1e-15)
