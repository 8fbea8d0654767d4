#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Reading field specifications and writing reports. A field specification
(FieldSpec) is a JSON document describing ξ = Σ λ_j z_j ∂_j + Σ a_{j,m} z^m ∂_j:

    {
        "n": 2,
        "lambda": [[1, 0], [2, 0]],
        "terms": [{"j": 2, "m": [2, 0], "a": [1, 0]}],
        "options": {"degree": 4}
    }

Complex numbers are [re, im] pairs whose entries are numbers or exact "p/q"
strings; a bare real number is accepted as well. Components j are 1-based.
Reports are written as JSON with a stable key order, so that the same run
always produces the same bytes.

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from .errors import InvalidFieldSpecError
from .scalars import field_for, is_rational_literal
from .vector_fields import VectorField, unit
from fractions import Fraction
import numpy as np
import numbers
import json
import os

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"

OPTION_TYPES = {"exact": bool,
                "tol": float,
                "degree": int,
                "depth": int,
                "radius": float,
                "samples": int,
                "seed": int,
                "z0": "point",
                "t": "complex",
                "steps": int}


def _check_number(value, key: str):
    if isinstance(value, bool):
        raise InvalidFieldSpecError(f"'{key}' must be a number, got {value!r}", key=key)
    if isinstance(value, numbers.Real):
        return
    if isinstance(value, str):
        try:
            Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidFieldSpecError(f"'{key}' is not a number or a 'p/q' string: {value!r}", key=key)
        return
    raise InvalidFieldSpecError(f"'{key}' must be a number, got {value!r}", key=key)


def _check_complex(value, key: str):
    if isinstance(value, list):
        if len(value) != 2:
            raise InvalidFieldSpecError(f"'{key}' must be an [re, im] pair", key=key)
        _check_number(value[0], f"{key}[0]")
        _check_number(value[1], f"{key}[1]")
    else:
        _check_number(value, key)


def _check_int(value, key: str, low: int or None = None, high: int or None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidFieldSpecError(f"'{key}' must be an integer, got {value!r}", key=key)
    if (low is not None and value < low) or (high is not None and value > high):
        raise InvalidFieldSpecError(f"'{key}' = {value} is out of range [{low}, {high}]", key=key)
    return value


def _check_options(options, n: int) -> dict:
    """Validated options; float options come back as floats ("p/q" strings included)"""
    if not isinstance(options, dict):
        raise InvalidFieldSpecError("'options' must be an object", key="options")
    out = {}
    for name, value in options.items():
        key = f"options.{name}"
        if name not in OPTION_TYPES:
            raise InvalidFieldSpecError(f"Unknown option '{name}'", key=key)
        expected = OPTION_TYPES[name]
        if expected is bool and not isinstance(value, bool):
            raise InvalidFieldSpecError(f"'{key}' must be true or false", key=key)
        if expected is int:
            _check_int(value, key, low=0)
        if expected is float:
            _check_number(value, key)
            value = _real(value)
            if value < 0 or (name == "radius" and value == 0):
                raise InvalidFieldSpecError(f"'{key}' = {value} is out of range", key=key)
        if name == "z0":
            if not isinstance(value, list) or len(value) != n:
                raise InvalidFieldSpecError(f"'{key}' must list {n} coordinates", key=key)
            for i, z in enumerate(value):
                _check_complex(z, f"{key}[{i}]")
        if name == "t":
            _check_complex(value, key)
        out[name] = value
    return out


class FieldSpec:
    """
    Validated field specification.

    Parameters
    ----------
    n: int
        Ambient dimension, n >= 2
    lambdas: list
        Eigenvalues as given in the document
    terms: list of dict
        {"j": 1-based component, "m": exponent, "a": coefficient}
    options: dict, optional
        Run options (see OPTION_TYPES)
    """

    def __init__(self,
                 n: int,
                 lambdas: list,
                 terms: list or None = None,
                 options: dict or None = None):
        self.n = n
        self.lambdas = list(lambdas)
        self.terms = list(terms or [])
        self.options = dict(options or {})

    @classmethod
    def from_dict(cls, doc) -> "FieldSpec":
        """
        Validate a parsed document.

        Raises
        ------
        InvalidFieldSpecError
            The document does not follow the schema; the error names the offending key
        """
        if not isinstance(doc, dict):
            raise InvalidFieldSpecError("A field specification must be a JSON object", key=None)
        for key in doc:
            if key not in ("n", "lambda", "terms", "options"):
                raise InvalidFieldSpecError(f"Unknown key '{key}'", key=key)
        for key in ("n", "lambda"):
            if key not in doc:
                raise InvalidFieldSpecError(f"Missing required key '{key}'", key=key)
        n = _check_int(doc["n"], "n", low=2)
        lambdas = doc["lambda"]
        if not isinstance(lambdas, list) or len(lambdas) != n:
            raise InvalidFieldSpecError(f"'lambda' must list n = {n} eigenvalues", key="lambda")
        for i, value in enumerate(lambdas):
            _check_complex(value, f"lambda[{i}]")
        terms = doc.get("terms", [])
        if not isinstance(terms, list):
            raise InvalidFieldSpecError("'terms' must be a list", key="terms")
        for i, term in enumerate(terms):
            key = f"terms[{i}]"
            if not isinstance(term, dict) or set(term) != {"j", "m", "a"}:
                raise InvalidFieldSpecError(f"'{key}' must be an object with keys j, m and a", key=key)
            _check_int(term["j"], f"{key}.j", low=1, high=n)
            m = term["m"]
            if not isinstance(m, list) or len(m) != n:
                raise InvalidFieldSpecError(f"'{key}.m' must list n = {n} exponents", key=f"{key}.m")
            for k, e in enumerate(m):
                _check_int(e, f"{key}.m[{k}]", low=0)
            if sum(m) < 1:
                raise InvalidFieldSpecError(f"'{key}.m' has degree 0; constant terms are not allowed",
                                            key=f"{key}.m")
            _check_complex(term["a"], f"{key}.a")
        options = _check_options(doc.get("options", {}), n)
        return cls(n, lambdas, terms, options)

    @classmethod
    def load(cls, path: str) -> "FieldSpec":
        """
        Read and validate a JSON file.

        Raises
        ------
        InvalidFieldSpecError
            File missing, not JSON or not schema-valid
        """
        if not os.path.isfile(path):
            raise InvalidFieldSpecError(f"No such file: {path}", key=None)
        try:
            with open(path, "r", encoding="utf-8") as f:
                doc = json.load(f)
        except json.JSONDecodeError as err:
            raise InvalidFieldSpecError(f"{path} is not valid JSON: {err}", key=None) from err
        return cls.from_dict(doc)

    def values(self) -> list:
        """Every scalar of the document (eigenvalues then coefficients)"""
        return self.lambdas + [t["a"] for t in self.terms]

    def is_rational(self) -> bool:
        return all(is_rational_literal(v) for v in self.values())

    def build(self,
              exact: bool or None = None,
              tol: float or None = None) -> VectorField:
        """
        The field ξ = Σ λ_j z_j ∂_j + Σ a z^m ∂_j. Exact mode is chosen when every
        scalar is rational unless forced by exact (or the 'exact' option).

        Parameters
        ----------
        exact: bool, optional
        tol: float, optional
            Purge tolerance in floating point mode (default 1e-14)

        Returns
        -------
        VectorField
        """
        exact = self.options.get("exact") if exact is None else exact
        tol = float(self.options.get("tol", 1e-14)) if tol is None else tol
        field = field_for(self.values(), exact=exact, tol=tol)
        terms = {}
        for j, value in enumerate(self.lambdas):
            terms[(j, unit(self.n, j))] = field.convert(value)
        for t in self.terms:
            key = (t["j"] - 1, tuple(t["m"]))
            a = field.convert(t["a"])
            terms[key] = terms[key] + a if key in terms else a
        return VectorField(self.n, terms, field=field)

    def to_dict(self) -> dict:
        """Input echo; from_dict(to_dict()) reproduces this specification"""
        out = {"n": self.n, "lambda": self.lambdas, "terms": self.terms}
        if self.options:
            out["options"] = self.options
        return out

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.to_dict() == self.to_dict()

    __hash__ = None

    def __repr__(self):
        return f"FieldSpec(n={self.n}, terms={len(self.terms)})"


def parse_complex(value) -> complex:
    """
    Read a number, a "p/q" string, a complex literal such as "1+2j" (or "1+2i")
    or an [re, im] pair as a complex number.

    Raises
    ------
    ValueError
        Value cannot be read as a complex number
    """
    if isinstance(value, (list, tuple)):
        re, im = value
        return complex(_real(re), _real(im))
    if isinstance(value, str):
        text = value.strip()
        try:
            return complex(float(Fraction(text)), 0.)
        except (ValueError, ZeroDivisionError):
            return complex(text.replace(" ", "").replace("i", "j"))
    return complex(value)


def _real(value) -> float:
    return float(Fraction(value.strip())) if isinstance(value, str) else float(value)


def jsonable(obj):
    """
    Convert a report to JSON-compatible values: complex numbers become
    [re, im] pairs, Fractions 'p/q' strings (integers when whole), numpy
    scalars and arrays Python numbers and lists, tuples lists.
    """
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    return obj


def dumps_report(report: dict) -> str:
    """Serialise a report; keys keep their insertion order and floats their full precision"""
    return json.dumps(jsonable(report), indent=2, ensure_ascii=False) + "\n"


def write_report(report: dict, path: str):
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_report(report))
