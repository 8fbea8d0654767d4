from ..data.scalars import (parse_rational, is_rational_literal, to_fraction, field_for, ExactField,
                            FloatField)
from ..data.errors import ModeMismatchError
from fractions import Fraction
from sympy.polys.domains import QQ_I
import sympy
import pytest


@pytest.mark.parametrize("value,expected",
                         [(3, sympy.Integer(3)),
                          ("1/3", sympy.Rational(1, 3)),
                          (" -2/4 ", sympy.Rational(-1, 2)),
                          (Fraction(5, 7), sympy.Rational(5, 7)),
                          (0.1, sympy.Rational(1, 10)),
                          ("0.25", sympy.Rational(1, 4))])
def test_parse_rational(value, expected):
    assert parse_rational(value) == expected


@pytest.mark.parametrize("value", [True, "abc", "1/0", None])
def test_parse_rational_invalid(value):
    with pytest.raises(ValueError):
        parse_rational(value)


@pytest.mark.parametrize("value,expected",
                         [(1, True), ("3/4", True), (Fraction(1, 2), True), ([1, "1/2"], True),
                          (0.5, False), ("0.5", False), ("1e3", False), ([1, 0.5], False), (True, False)])
def test_is_rational_literal(value, expected):
    assert is_rational_literal(value) is expected


def test_exact_field_convert():
    f = ExactField()
    z = f.convert(["1/2", -3])
    assert f.real(z) == Fraction(1, 2)
    assert f.imag(z) == Fraction(-3)
    assert f.serialize(z) == ["1/2", -3]
    assert f.conjugate(z) == f.convert(["1/2", 3])
    assert f.modulus_squared(f.convert([3, 4])) == 25
    assert f.modulus(f.convert([3, 4])) == pytest.approx(5.)
    assert f.convert(sympy.Rational(2, 3)) == QQ_I.from_sympy(sympy.Rational(2, 3))


def test_exact_field_purge():
    f = ExactField()
    terms = {"a": f.convert(1), "b": f.zero, "c": f.convert([0, 1])}
    assert list(f.purge(terms)) == ["a", "c"]
    assert f.is_zero(f.zero)
    assert not f.is_zero(f.convert("1/1000000000000"))


def test_float_field_purge():
    f = FloatField(tol=1e-14)
    terms = {"a": 1. + 0j, "b": 1e-16 + 0j, "c": 2e-14j}
    assert list(f.purge(terms)) == ["a", "c"]
    assert f.is_zero(1e-15)
    assert not f.is_zero(1e-13)
    assert f.convert(["1/4", 2]) == complex(0.25, 2)
    assert f.serialize(1 + 2j) == [1., 2.]
    assert f.conjugate(1 + 2j) == 1 - 2j


def test_field_for():
    assert field_for([1, "1/2", [2, 3]]).exact
    assert not field_for([1, 0.5]).exact
    assert field_for([1, 0.5], exact=True).exact
    assert not field_for([1, 2], exact=False).exact


def test_mode_mismatch():
    with pytest.raises(ModeMismatchError):
        ExactField().check_compatible(FloatField())
    FloatField(tol=1e-10).check_compatible(FloatField())


def test_to_fraction():
    q = QQ_I.from_sympy(sympy.Rational(3, 8))
    assert to_fraction(q.x) == Fraction(3, 8)
