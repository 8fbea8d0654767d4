#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Sparse polynomial (and Laurent) functions and vector fields on C^n. A vector
field is stored as a dictionary mapping (component, exponent) to a coefficient,
so that a·z^m ∂/∂z_j is the single entry (j, m) -> a. Components are 0-based
inside the library. Keys are kept in canonical order, component-major and then
graded reverse-lexicographic on the exponent, and zero coefficients are purged
after every operation.

All objects are immutable once built and every operation is a pure function.

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from .errors import DimensionMismatchError, LaurentBoxError, TruncationError
from .scalars import ScalarField, ExactField, FloatField, is_rational_literal
from sympy.polys.domains import QQ_I
from types import MappingProxyType
from itertools import combinations_with_replacement
import numpy as np
import sympy

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"


def degree(m: tuple) -> int:
    return sum(m)


def monomial_key(m: tuple) -> tuple:
    """
    Sort key realising the canonical monomial order: increasing total degree and,
    within a degree, graded reverse-lexicographic order with the largest monomial
    first (z1^2, z1 z2, z2^2, z1 z3, ...).
    """
    return sum(m), tuple(reversed(m))


def field_key(key: tuple) -> tuple:
    j, m = key
    return j, monomial_key(m)


def unit(n: int, k: int) -> tuple:
    return tuple(1 if i == k else 0 for i in range(n))


def add_exponents(*exponents) -> tuple:
    return tuple(sum(e) for e in zip(*exponents))


def multi_indices(n: int, d: int) -> list:
    """
    All exponents m in N^n with |m| = d, in canonical order.

    Parameters
    ----------
    n: int
    d: int

    Returns
    -------
    list of tuple
    """
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n), d):
        m = [0] * n
        for k in combo:
            m[k] += 1
        out.append(tuple(m))
    return sorted(out, key=monomial_key)


def multi_indices_upto(n: int,
                       max_degree: int,
                       min_degree: int = 0) -> list:
    """
    All exponents m in N^n with min_degree <= |m| <= max_degree, in canonical order.
    """
    out = []
    for d in range(max(min_degree, 0), max_degree + 1):
        out.extend(multi_indices(n, d))
    return out


def field_monomials_upto(n: int,
                         max_degree: int,
                         min_degree: int = 0) -> list:
    """
    Keys (j, m) of every monomial vector field z^m ∂_j with min_degree <= |m| <= max_degree,
    in canonical (component-major) order.
    """
    exps = multi_indices_upto(n, max_degree, min_degree)
    return [(j, m) for j in range(n) for m in exps]


def _infer_field(values) -> ScalarField:
    values = list(values)
    if all(isinstance(v, QQ_I.dtype) or is_rational_literal(v) for v in values):
        return ExactField()
    return FloatField()


def _symbols(n: int) -> tuple:
    return sympy.symbols(f"z1:{n + 1}")


def _check_dimension(n: int, *objects):
    for obj in objects:
        if obj.n != n:
            raise DimensionMismatchError(f"Expected objects on C^{n}, got one on C^{obj.n}")


def _merge_box(*boxes) -> tuple or None:
    boxes = [b for b in boxes if b is not None]
    if not boxes:
        return None
    lo = tuple(min(v) for v in zip(*[b[0] for b in boxes]))
    hi = tuple(max(v) for v in zip(*[b[1] for b in boxes]))
    return lo, hi


def _key_box(exponents, n: int) -> tuple or None:
    exponents = list(exponents)
    if not exponents:
        return None
    lo = tuple(min(m[i] for m in exponents) for i in range(n))
    hi = tuple(max(m[i] for m in exponents) for i in range(n))
    return lo, hi


def _horner_plan(terms: dict):
    """
    Nested Horner scheme for {exponent: complex}: the first variable is
    factored out and each of its coefficients is a scheme in the remaining
    variables. Negative exponents are handled by a trailing power x^lo.
    """
    first = next(iter(terms))
    if not first:
        return complex(sum(terms.values()))
    groups = {}
    for m, a in terms.items():
        groups.setdefault(m[0], {})[m[1:]] = a
    lo, hi = min(groups), max(groups)
    return lo, [_horner_plan(groups[k]) if k in groups else None for k in range(hi, lo - 1, -1)]


def _horner_eval(plan, points: np.ndarray) -> np.ndarray:
    if not isinstance(plan, tuple):
        return np.full(points.shape[0], plan, dtype=complex)
    lo, blocks = plan
    x, rest = points[:, 0], points[:, 1:]
    acc = np.zeros(points.shape[0], dtype=complex)
    for block in blocks:
        acc = acc * x
        if block is not None:
            acc = acc + _horner_eval(block, rest)
    return acc * x ** lo if lo else acc


class _SparseTerms:
    """
    Shared machinery of functions and vector fields: validated, purged,
    canonically ordered term dictionaries tied to a scalar field.
    """
    laurent = False

    def __init__(self,
                 n: int,
                 terms: dict or None = None,
                 field: ScalarField or None = None,
                 box: tuple or None = None):
        assert n >= 1, "ambient dimension must be positive"
        terms = terms or {}
        if field is None:
            field = _infer_field(terms.values())
        self._n = n
        self._field = field
        converted = {}
        for key, value in terms.items():
            key = self._normalise_key(key)
            value = field.convert(value)
            if key in converted:
                converted[key] = converted[key] + value
            else:
                converted[key] = value
        converted = field.purge(converted)
        self._terms = {k: converted[k] for k in sorted(converted, key=self._sort_key)}
        self._box = None
        if self.laurent:
            exps = [self._exponent(k) for k in self._terms]
            self._box = box if box is not None else _key_box(exps, n)
            if box is not None:
                self._check_box(exps)

    # subclasses define the layout of their keys
    def _normalise_key(self, key):
        raise NotImplementedError

    @staticmethod
    def _sort_key(key):
        raise NotImplementedError

    @staticmethod
    def _exponent(key) -> tuple:
        raise NotImplementedError

    def _check_exponent(self, m) -> tuple:
        m = tuple(int(x) for x in m)
        if len(m) != self._n:
            raise DimensionMismatchError(f"Exponent {m} does not have length {self._n}")
        if not self.laurent and any(x < 0 for x in m):
            raise ValueError(f"Exponent {m} has negative entries; use a Laurent object")
        return m

    def _check_box(self, exponents):
        lo, hi = self._box
        for m in exponents:
            if any(not (a <= x <= b) for x, a, b in zip(m, lo, hi)):
                raise LaurentBoxError(f"Exponent {m} lies outside the declared box {self._box}")

    @property
    def n(self) -> int:
        return self._n

    @property
    def field(self) -> ScalarField:
        return self._field

    @property
    def exact(self) -> bool:
        return self._field.exact

    @property
    def terms(self) -> MappingProxyType:
        return MappingProxyType(self._terms)

    @property
    def box(self) -> tuple or None:
        return self._box

    def keys(self) -> list:
        return list(self._terms)

    def coefficient(self, key):
        return self._terms.get(self._normalise_key(key), self._field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Largest |m| among the stored terms (-1 for the zero object)"""
        if not self._terms:
            return -1
        return max(sum(self._exponent(k)) for k in self._terms)

    @property
    def low_degree(self) -> int:
        """Smallest |m| among the stored terms (-1 for the zero object)"""
        if not self._terms:
            return -1
        return min(sum(self._exponent(k)) for k in self._terms)

    def max_modulus(self) -> float:
        if not self._terms:
            return 0.
        return max(self._field.modulus(v) for v in self._terms.values())

    def _like(self, terms: dict, box: tuple or None = None, cls=None):
        cls = cls or type(self)
        if cls.laurent:
            box = _merge_box(box, _key_box([self._exponent(k) for k in terms], self._n))
            return cls(self._n, terms, field=self._field, box=box)
        return cls(self._n, terms, field=self._field)

    def _filtered(self, predicate):
        return self._like({k: v for k, v in self._terms.items() if predicate(k)}, box=self._box)

    def truncate(self, max_degree: int):
        """Drop every term with |m| > max_degree"""
        return self._filtered(lambda k: sum(self._exponent(k)) <= max_degree)

    def homogeneous_part(self, d: int):
        """Terms with |m| = d"""
        return self._filtered(lambda k: sum(self._exponent(k)) == d)

    def scale(self, c):
        c = self._field.convert(c)
        return self._like({k: v * c for k, v in self._terms.items()}, box=self._box)

    def to_float(self):
        """Copy of this object in floating point mode"""
        field = self._field if not self.exact else FloatField()
        terms = {k: self._field.to_complex(v) for k, v in self._terms.items()}
        if self.laurent:
            return type(self)(self._n, terms, field=field, box=self._box)
        return type(self)(self._n, terms, field=field)

    def _combine(self, other, sign: int):
        if not isinstance(other, _SparseTerms) or \
                isinstance(other, VectorField) != isinstance(self, VectorField):
            return NotImplemented
        _check_dimension(self._n, other)
        self._field.check_compatible(other.field)
        out = dict(self._terms)
        for k, v in other.terms.items():
            v = v if sign > 0 else -v
            out[k] = out[k] + v if k in out else v
        cls = type(self) if self.laurent or not other.laurent else type(other)
        return self._like(out, box=_merge_box(self._box, other.box), cls=cls)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self._like({k: -v for k, v in self._terms.items()}, box=self._box)

    def __eq__(self, other):
        if not isinstance(other, _SparseTerms) or other.n != self._n:
            return False
        if other.exact != self.exact or set(other.terms) != set(self._terms):
            return False
        return all(other.terms[k] == v for k, v in self._terms.items())

    __hash__ = None

    def equals(self, other, tol: float = 1e-10) -> bool:
        """
        Compare with another object of the same shape. Exact objects compare exactly,
        floating point objects to tol relative to the largest coefficient.
        """
        if self.exact and other.exact:
            return self == other
        diff = self.to_float() - other.to_float()
        scale = max(self.max_modulus(), other.max_modulus(), 1.)
        return diff.max_modulus() <= tol * scale


class PolyFunction(_SparseTerms):
    """
    Polynomial function on C^n, stored as exponent -> coefficient.

    Parameters
    ----------
    n: int
        Ambient dimension
    terms: dict, optional
        Mapping of exponent tuples to coefficients (anything the scalar field can convert)
    field: ScalarField, optional
        Inferred from the coefficients when omitted
    """

    def _normalise_key(self, key):
        return self._check_exponent(key)

    @staticmethod
    def _sort_key(key):
        return monomial_key(key)

    @staticmethod
    def _exponent(key) -> tuple:
        return key

    @classmethod
    def constant(cls, n: int, value, field: ScalarField or None = None):
        return cls(n, {(0,) * n: value}, field=field)

    @classmethod
    def variable(cls, n: int, k: int, field: ScalarField or None = None):
        return cls(n, {unit(n, k): 1}, field=field or ExactField())

    def derivative(self, k: int):
        """Partial derivative with respect to z_k"""
        out = {}
        for m, a in self._terms.items():
            if m[k]:
                key = tuple(x - 1 if i == k else x for i, x in enumerate(m))
                out[key] = a * m[k]
        return self._like(out, box=self._box)

    def __mul__(self, other):
        if isinstance(other, PolyFunction):
            return multiply_functions(self, other)
        if isinstance(other, VectorField):
            return multiply_function_field(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def evaluate(self, z) -> complex:
        return complex(self.evaluate_many(np.atleast_2d(np.asarray(z, dtype=complex)))[0])

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """
        Evaluate at every row of a (P, n) complex array.

        The polynomial is evaluated by a Horner scheme nested by variable
        (z_1 outermost), so each step costs one multiplication and one addition
        and the rounding error is of order deg·eps·Σ|a_m||z|^m. The scheme is
        built once and cached; terms are immutable.
        """
        points = np.asarray(points, dtype=complex)
        if not self._terms:
            return np.zeros(points.shape[0], dtype=complex)
        plan = getattr(self, "_plan", None)
        if plan is None:
            plan = _horner_plan({m: self._field.to_complex(a) for m, a in self._terms.items()})
            self._plan = plan
        return _horner_eval(plan, points)

    def to_sympy(self, symbols: tuple or None = None):
        symbols = symbols or _symbols(self._n)
        expr = sympy.Integer(0)
        for m, a in self._terms.items():
            expr += self._field.to_sympy(a) * sympy.Mul(*[s ** e for s, e in zip(symbols, m)])
        return expr

    def __repr__(self):
        return f"{type(self).__name__}({self.to_sympy()})"


class LaurentFunction(PolyFunction):
    """
    Laurent polynomial on (C*)^n. Exponents may be negative and every exponent lies
    in the declared box ((lo_1, ..., lo_n), (hi_1, ..., hi_n)); when no box is given
    the bounding box of the terms is used.
    """
    laurent = True


class VectorField(_SparseTerms):
    """
    Polynomial vector field on C^n, stored as (j, m) -> a for the monomial field
    a·z^m ∂/∂z_j. Components are 0-based.

    Parameters
    ----------
    n: int
        Ambient dimension
    terms: dict, optional
        Mapping of (component, exponent) keys to coefficients
    field: ScalarField, optional
        Inferred from the coefficients when omitted
    """

    def _normalise_key(self, key):
        j, m = key
        j = int(j)
        if not 0 <= j < self._n:
            raise DimensionMismatchError(f"Component {j} is not in 0..{self._n - 1}")
        return j, self._check_exponent(m)

    @staticmethod
    def _sort_key(key):
        return field_key(key)

    @staticmethod
    def _exponent(key) -> tuple:
        return key[1]

    @classmethod
    def monomial(cls, n: int, j: int, m: tuple, coefficient=1, field: ScalarField or None = None):
        return cls(n, {(j, tuple(m)): coefficient}, field=field)

    @classmethod
    def diagonal(cls, values: list, field: ScalarField or None = None):
        """
        The diagonal linear field Σ λ_j z_j ∂/∂z_j

        Parameters
        ----------
        values: list
            Eigenvalues (converted by the scalar field)
        field: ScalarField, optional

        Returns
        -------
        VectorField
        """
        n = len(values)
        return cls(n, {(j, unit(n, j)): v for j, v in enumerate(values)}, field=field)

    @classmethod
    def from_components(cls, components: list):
        n = len(components)
        field = components[0].field
        terms = {}
        for j, f in enumerate(components):
            _check_dimension(n, f)
            field.check_compatible(f.field)
            for m, a in f.terms.items():
                terms[(j, m)] = a
        return cls(n, terms, field=field)

    def component(self, j: int) -> PolyFunction:
        cls = LaurentFunction if self.laurent else PolyFunction
        terms = {m: a for (k, m), a in self._terms.items() if k == j}
        if self.laurent:
            return cls(self._n, terms, field=self._field, box=self._box)
        return cls(self._n, terms, field=self._field)

    def linear_part(self) -> list:
        """n x n nested list A with A[j][k] the coefficient of z_k ∂_j"""
        zero = self._field.zero
        out = [[zero] * self._n for _ in range(self._n)]
        for (j, m), a in self._terms.items():
            if sum(m) == 1 and all(x >= 0 for x in m):
                out[j][m.index(1)] = a
        return out

    def __mul__(self, other):
        if isinstance(other, PolyFunction):
            return multiply_function_field(other, self)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, PolyFunction):
            return multiply_function_field(other, self)
        return self.scale(other)

    def evaluate(self, z) -> np.ndarray:
        return self.evaluate_many(np.atleast_2d(np.asarray(z, dtype=complex)))[0]

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """
        Evaluate at every row of a (P, n) complex array, returning a (P, n) array.
        Each component is evaluated by the cached Horner scheme of PolyFunction.evaluate_many.
        """
        points = np.asarray(points, dtype=complex)
        out = np.zeros((points.shape[0], self._n), dtype=complex)
        if not self._terms:
            return out
        plans = getattr(self, "_plans", None)
        if plans is None:
            components = {}
            for (j, m), a in self._terms.items():
                components.setdefault(j, {})[m] = self._field.to_complex(a)
            plans = {j: _horner_plan(terms) for j, terms in components.items()}
            self._plans = plans
        for j, plan in plans.items():
            out[:, j] = _horner_eval(plan, points)
        return out

    def to_sympy(self, symbols: tuple or None = None) -> sympy.Matrix:
        symbols = symbols or _symbols(self._n)
        return sympy.Matrix([self.component(j).to_sympy(symbols) for j in range(self._n)])

    def describe(self) -> str:
        """Human readable form using 1-based components, e.g. 'z1*∂1 + 2*z2*∂2'"""
        if not self._terms:
            return "0"
        parts = []
        symbols = _symbols(self._n)
        for (j, m), a in self._terms.items():
            mono = sympy.Mul(*[s ** e for s, e in zip(symbols, m)])
            parts.append(f"({self._field.to_sympy(a)})*{mono}*∂{j + 1}")
        return " + ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({self.describe()})"


class LaurentVectorField(VectorField):
    """
    Vector field with Laurent coefficients, exponents restricted to a declared box.
    """
    laurent = True


def _result_class(base, *objects):
    if any(o.laurent for o in objects):
        return LaurentVectorField if base is VectorField else LaurentFunction
    return base


def _build(cls, n: int, terms: dict, field: ScalarField, *objects):
    if cls.laurent:
        box = _merge_box(*[o.box for o in objects if o.laurent],
                         _key_box([cls._exponent(k) for k in terms], n))
        return cls(n, terms, field=field, box=box)
    return cls(n, terms, field=field)


def _accumulate(out: dict, key, value):
    if key in out:
        out[key] = out[key] + value
    else:
        out[key] = value


def multiply_functions(f: PolyFunction, g: PolyFunction) -> PolyFunction:
    """Product of two (Laurent) polynomial functions"""
    _check_dimension(f.n, g)
    f.field.check_compatible(g.field)
    out = {}
    for m, a in f.terms.items():
        for l, b in g.terms.items():
            _accumulate(out, add_exponents(m, l), a * b)
    return _build(_result_class(PolyFunction, f, g), f.n, out, f.field, f, g)


def bracket(X: VectorField, Y: VectorField) -> VectorField:
    """
    Lie bracket [X, Y] of two vector fields, expanded monomial by monomial:
    [z^m ∂_k, z^l ∂_j] = l_k z^(m+l-e_k) ∂_j - m_j z^(m+l-e_j) ∂_k.

    Parameters
    ----------
    X: VectorField
    Y: VectorField

    Returns
    -------
    VectorField
        Laurent when either argument is Laurent

    Raises
    ------
    DimensionMismatchError
        X and Y live on different ambient spaces
    ModeMismatchError
        One argument is exact and the other floating point
    """
    _check_dimension(X.n, Y)
    X.field.check_compatible(Y.field)
    n = X.n
    out = {}
    for (k, m), a in X.terms.items():
        for (j, l), b in Y.terms.items():
            ab = a * b
            if l[k]:
                shifted = tuple(x + y - (1 if i == k else 0) for i, (x, y) in enumerate(zip(m, l)))
                _accumulate(out, (j, shifted), ab * l[k])
            if m[j]:
                shifted = tuple(x + y - (1 if i == j else 0) for i, (x, y) in enumerate(zip(m, l)))
                _accumulate(out, (k, shifted), -(ab * m[j]))
    return _build(_result_class(VectorField, X, Y), n, out, X.field, X, Y)


def lie_derivative_field(xi: VectorField, X: VectorField) -> VectorField:
    """L_ξ(X) = [ξ, X]"""
    return bracket(xi, X)


def lie_derivative_function(xi: VectorField, f: PolyFunction) -> PolyFunction:
    """
    L_ξ(f) = ξ(f) = Σ_k ξ_k ∂f/∂z_k

    Parameters
    ----------
    xi: VectorField
    f: PolyFunction

    Returns
    -------
    PolyFunction
        Laurent when f or ξ is Laurent

    Raises
    ------
    DimensionMismatchError
    """
    _check_dimension(xi.n, f)
    xi.field.check_compatible(f.field)
    out = {}
    for (k, l), a in xi.terms.items():
        for m, b in f.terms.items():
            if m[k]:
                shifted = tuple(x + y - (1 if i == k else 0) for i, (x, y) in enumerate(zip(m, l)))
                _accumulate(out, shifted, a * b * m[k])
    return _build(_result_class(PolyFunction, xi, f), xi.n, out, xi.field, xi, f)


def multiply_function_field(f: PolyFunction, X: VectorField) -> VectorField:
    """The field f·X"""
    _check_dimension(f.n, X)
    f.field.check_compatible(X.field)
    out = {}
    for m, b in f.terms.items():
        for (j, l), a in X.terms.items():
            _accumulate(out, (j, add_exponents(m, l)), a * b)
    return _build(_result_class(VectorField, f, X), X.n, out, X.field, f, X)


def evaluate(X: VectorField, z) -> np.ndarray:
    """
    Evaluate X at a single point of C^n.

    Raises
    ------
    DimensionMismatchError
        Point does not have n coordinates
    """
    z = np.asarray(z, dtype=complex)
    if z.shape != (X.n,):
        raise DimensionMismatchError(f"Point of length {z.shape} given for a field on C^{X.n}")
    return X.evaluate(z)


def require_polynomial_degree(obj: _SparseTerms, max_degree: int):
    """
    Raises
    ------
    TruncationError
        Object carries a term of degree above max_degree
    """
    if obj.degree > max_degree:
        raise TruncationError(f"Object of degree {obj.degree} exceeds the truncation degree {max_degree}")
