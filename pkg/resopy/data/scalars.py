#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Every coefficient and eigenvalue handled by resopy lives in a scalar field.
Two are provided: the exact field of Gaussian rationals (sympy's QQ_I domain),
used whenever every input is rational, and the field of double precision
complex numbers, which compares against a stated tolerance. The field is
carried by the object that holds the numbers (a Spectrum, a VectorField, an
OperatorMatrix...) and a single computation never mixes the two.

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from .errors import ModeMismatchError
from abc import ABC, abstractmethod
from fractions import Fraction
from sympy.polys.domains import QQ_I
import numbers
import sympy

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"


def parse_rational(value) -> sympy.Rational:
    """
    Parse a real number given as an int, a Fraction, a "p/q" string, a decimal
    string or a float into an exact sympy Rational. Floats are read through
    their shortest decimal representation, so 0.1 becomes 1/10.

    Parameters
    ----------
    value: int, float, str, Fraction or sympy.Rational

    Returns
    -------
    sympy.Rational

    Raises
    ------
    ValueError
        Value cannot be read as a real rational number
    """
    if isinstance(value, bool):
        raise ValueError(f"{value!r} is not a number")
    if isinstance(value, sympy.Rational):
        return value
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, numbers.Integral):
        return sympy.Integer(int(value))
    if isinstance(value, float):
        return sympy.Rational(repr(value))
    if isinstance(value, str):
        try:
            return sympy.Rational(Fraction(value.strip()).numerator,
                                  Fraction(value.strip()).denominator)
        except (ValueError, ZeroDivisionError) as err:
            raise ValueError(f"{value!r} is not a rational number") from err
    raise ValueError(f"{value!r} is not a rational number")


def is_rational_literal(value) -> bool:
    """
    True if value is an int, a Fraction or a "p/q"/integer string, i.e. it can be
    represented exactly without making a choice about a decimal expansion.

    Parameters
    ----------
    value: object

    Returns
    -------
    bool
    """
    if isinstance(value, bool):
        return False
    if isinstance(value, (numbers.Integral, Fraction, sympy.Rational)):
        return True
    if isinstance(value, str):
        try:
            Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            return False
        return "." not in value and "e" not in value.lower()
    if isinstance(value, (list, tuple)):
        return all(is_rational_literal(v) for v in value)
    return False


def _split_pair(value) -> tuple:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex numbers are given as [re, im] pairs, got {value!r}")
        return value[0], value[1]
    if isinstance(value, complex):
        return value.real, value.imag
    return value, 0


def to_fraction(q) -> Fraction:
    """
    Convert a rational element of a sympy ground domain (python or gmpy flavour)
    or a sympy Rational into a Fraction.
    """
    return Fraction(int(q.numerator), int(q.denominator))


class ScalarField(ABC):
    """
    Base class for the scalar fields used by resopy.

    Attributes
    ----------
    exact: bool
        True for the Gaussian rationals, False for double precision complex numbers
    """
    exact = False

    @property
    @abstractmethod
    def zero(self):
        ...

    @property
    @abstractmethod
    def one(self):
        ...

    @abstractmethod
    def convert(self, value):
        """Convert an int, float, complex, "p/q" string or [re, im] pair into an element"""
        ...

    @abstractmethod
    def is_zero(self, value, scale: float = 1.0) -> bool:
        ...

    @abstractmethod
    def to_complex(self, value) -> complex:
        ...

    @abstractmethod
    def serialize(self, value) -> list:
        """[re, im] pair suitable for a JSON document"""
        ...

    @abstractmethod
    def purge(self, terms: dict) -> dict:
        """Drop the coefficients of a term dictionary that are zero for this field"""
        ...

    @abstractmethod
    def conjugate(self, value):
        ...

    def modulus(self, value) -> float:
        return abs(self.to_complex(value))

    def to_sympy(self, value):
        z = self.to_complex(value)
        return sympy.Float(z.real) + sympy.I * sympy.Float(z.imag)

    def check_compatible(self, other: "ScalarField"):
        """
        Raises
        ------
        ModeMismatchError
            The two fields are not of the same kind
        """
        if self.exact != other.exact:
            raise ModeMismatchError("Cannot mix exact and floating point objects in one computation")


class ExactField(ScalarField):
    """
    The field of Gaussian rationals, backed by sympy's QQ_I domain. Equality is
    exact and zero coefficients are purged with threshold 0.
    """
    exact = True

    @property
    def zero(self):
        return QQ_I.zero

    @property
    def one(self):
        return QQ_I.one

    def convert(self, value):
        if isinstance(value, QQ_I.dtype):
            return value
        if isinstance(value, sympy.Expr) and not isinstance(value, sympy.Rational):
            return QQ_I.from_sympy(sympy.nsimplify(value, rational=True))
        re, im = _split_pair(value)
        return QQ_I.from_sympy(parse_rational(re) + sympy.I * parse_rational(im))

    def is_zero(self, value, scale: float = 1.0) -> bool:
        return not value

    def to_complex(self, value) -> complex:
        return complex(float(value.x), float(value.y))

    def conjugate(self, value):
        return self.convert([self.real(value), -self.imag(value)])

    def real(self, value) -> Fraction:
        return to_fraction(value.x)

    def imag(self, value) -> Fraction:
        return to_fraction(value.y)

    def modulus_squared(self, value) -> Fraction:
        return self.real(value) ** 2 + self.imag(value) ** 2

    def serialize(self, value) -> list:
        return [_rational_out(self.real(value)), _rational_out(self.imag(value))]

    def purge(self, terms: dict) -> dict:
        return {k: v for k, v in terms.items() if v}

    def to_sympy(self, value):
        return QQ_I.to_sympy(value)

    def __eq__(self, other):
        return isinstance(other, ExactField)

    def __hash__(self):
        return hash("ExactField")

    def __repr__(self):
        return "ExactField()"


class FloatField(ScalarField):
    """
    Double precision complex numbers. Coefficients whose modulus is at most
    tol times the largest modulus of the same object are purged.

    Parameters
    ----------
    tol: float (default=1e-14)
        Relative purge threshold
    """
    exact = False

    def __init__(self, tol: float = 1e-14):
        assert tol >= 0, "tolerance must be non-negative"
        self.tol = tol

    @property
    def zero(self):
        return 0j

    @property
    def one(self):
        return 1 + 0j

    def convert(self, value):
        if isinstance(value, QQ_I.dtype):
            return complex(float(value.x), float(value.y))
        if isinstance(value, sympy.Expr):
            return complex(value.evalf())
        re, im = _split_pair(value)
        return complex(_float_in(re), _float_in(im))

    def is_zero(self, value, scale: float = 1.0) -> bool:
        return abs(value) <= self.tol * scale

    def to_complex(self, value) -> complex:
        return complex(value)

    def conjugate(self, value):
        return complex(value).conjugate()

    def serialize(self, value) -> list:
        return [float(value.real), float(value.imag)]

    def purge(self, terms: dict) -> dict:
        if not terms:
            return {}
        threshold = self.tol * max(abs(v) for v in terms.values())
        return {k: v for k, v in terms.items() if abs(v) > threshold}

    def __eq__(self, other):
        return isinstance(other, FloatField) and other.tol == self.tol

    def __hash__(self):
        return hash(("FloatField", self.tol))

    def __repr__(self):
        return f"FloatField(tol={self.tol})"


def _float_in(value) -> float:
    if isinstance(value, str):
        return float(Fraction(value.strip()))
    return float(value)


def _rational_out(q: Fraction):
    if q.denominator == 1:
        return int(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def field_for(values: list,
              exact: bool or None = None,
              tol: float = 1e-14) -> ScalarField:
    """
    Choose the scalar field of a computation. Exact mode is selected when every
    value is a rational literal (ints, Fractions or "p/q" strings, possibly in
    [re, im] pairs); floating point otherwise. Passing exact=True forces exact
    mode (floats are then read through their decimal representation) and
    exact=False forces floating point.

    Parameters
    ----------
    values: list
    exact: bool, optional
    tol: float (default=1e-14)
        Purge tolerance of the float field

    Returns
    -------
    ScalarField
    """
    if exact is None:
        exact = all(is_rational_literal(v) for v in values)
    return ExactField() if exact else FloatField(tol=tol)
