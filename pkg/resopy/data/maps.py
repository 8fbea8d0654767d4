#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Truncated polynomial maps of C^n: composition, inversion of maps with an
invertible linear part and push-forward of vector fields, all computed
exactly up to a truncation degree N. These are the coordinate changes used by
the normal form iteration.

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from .errors import DimensionMismatchError, NonInvertibleLinearPartError, TruncationError
from .scalars import ScalarField, ExactField
from .vector_fields import PolyFunction, VectorField, lie_derivative_function, unit, add_exponents
from .linalg import OperatorMatrix
import numpy as np

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"


class PolyMap:
    """
    Polynomial map w -> (P_1(w), ..., P_n(w)) truncated at degree N.

    Parameters
    ----------
    components: list of PolyFunction
        One polynomial per coordinate, all on C^n with n = len(components)
    degree: int
        Truncation degree N; no component may carry a term of degree > N

    Raises
    ------
    DimensionMismatchError
        Components do not live on C^n
    TruncationError
        A component has a term of degree above N
    """

    def __init__(self,
                 components: list,
                 degree: int):
        assert degree >= 1, "truncation degree must be at least 1"
        n = len(components)
        field = components[0].field
        for p in components:
            if p.n != n:
                raise DimensionMismatchError(f"Component on C^{p.n} given for a map of C^{n}")
            if p.laurent:
                raise ValueError("Polynomial maps take polynomial components")
            field.check_compatible(p.field)
            if p.degree > degree:
                raise TruncationError(f"Component of degree {p.degree} exceeds truncation degree {degree}")
        self._components = tuple(components)
        self._degree = degree
        self._field = field

    @classmethod
    def truncated(cls, components: list, degree: int):
        """Build a map after dropping every term of degree above degree"""
        return cls([p.truncate(degree) for p in components], degree)

    @classmethod
    def identity(cls, n: int, degree: int, field: ScalarField or None = None):
        field = field or ExactField()
        return cls([PolyFunction(n, {unit(n, k): 1}, field=field) for k in range(n)], degree)

    @classmethod
    def from_vector_field(cls, h: VectorField, degree: int, sign: int = 1):
        """The near-identity map w + sign·h(w), truncated at degree"""
        components = []
        for k in range(h.n):
            identity = PolyFunction(h.n, {unit(h.n, k): 1}, field=h.field)
            part = h.component(k)
            components.append(identity + part if sign > 0 else identity - part)
        return cls.truncated(components, degree)

    @property
    def n(self) -> int:
        return len(self._components)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def field(self) -> ScalarField:
        return self._field

    @property
    def exact(self) -> bool:
        return self._field.exact

    @property
    def components(self) -> tuple:
        return self._components

    def __getitem__(self, i: int) -> PolyFunction:
        return self._components[i]

    def linear_part(self) -> list:
        """n x n nested list L with L[i][k] the coefficient of w_k in component i"""
        return [[p.coefficient(unit(self.n, k)) for k in range(self.n)] for p in self._components]

    def has_constant_term(self) -> bool:
        zero = (0,) * self.n
        return any(zero in p.terms for p in self._components)

    @property
    def near_identity(self) -> bool:
        """True when the map fixes the origin and its linear part is the identity"""
        if self.has_constant_term():
            return False
        linear = self.linear_part()
        for i in range(self.n):
            for k in range(self.n):
                target = self._field.one if i == k else self._field.zero
                if not self._field.is_zero(linear[i][k] - target):
                    return False
        return True

    def nonlinear_part(self) -> "PolyMap":
        return PolyMap([p - p.homogeneous_part(1) for p in self._components], self._degree)

    def evaluate(self, w) -> np.ndarray:
        return self.evaluate_many(np.atleast_2d(np.asarray(w, dtype=complex)))[0]

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=complex)
        return np.stack([p.evaluate_many(points) for p in self._components], axis=1)

    def jacobian_many(self, points: np.ndarray) -> np.ndarray:
        """Jacobian matrices dΦ(w) at every row of points, shape (P, n, n)"""
        points = np.asarray(points, dtype=complex)
        out = np.zeros((points.shape[0], self.n, self.n), dtype=complex)
        for i, p in enumerate(self._components):
            for k in range(self.n):
                out[:, i, k] = p.derivative(k).evaluate_many(points)
        return out

    def to_vector_field(self) -> VectorField:
        """The components read as the coefficients of a vector field"""
        return VectorField.from_components(list(self._components))

    def __eq__(self, other):
        if not isinstance(other, PolyMap) or other.n != self.n:
            return False
        return all(a == b for a, b in zip(self._components, other.components))

    __hash__ = None

    def equals(self, other: "PolyMap", tol: float = 1e-10) -> bool:
        return other.n == self.n and all(a.equals(b, tol=tol)
                                         for a, b in zip(self._components, other.components))

    def __repr__(self):
        return f"PolyMap(N={self._degree}, {[str(p.to_sympy()) for p in self._components]})"


def _multiply_truncated(f: PolyFunction, g: PolyFunction, degree: int) -> PolyFunction:
    out = {}
    for m, a in f.terms.items():
        dm = sum(m)
        for l, b in g.terms.items():
            if dm + sum(l) > degree:
                continue
            key = add_exponents(m, l)
            out[key] = out[key] + a * b if key in out else a * b
    return PolyFunction(f.n, out, field=f.field)


def substitute_truncated(f: PolyFunction, Q: PolyMap, degree: int) -> PolyFunction:
    """
    The function f∘Q, truncated at degree. Powers of the components of Q are
    cached and truncated as they are built.

    Parameters
    ----------
    f: PolyFunction
    Q: PolyMap
    degree: int

    Returns
    -------
    PolyFunction
    """
    if f.n != Q.n:
        raise DimensionMismatchError(f"Function on C^{f.n} composed with a map of C^{Q.n}")
    f.field.check_compatible(Q.field)
    one = PolyFunction.constant(Q.n, 1, field=Q.field)
    powers = [[one] for _ in range(Q.n)]

    def power(k, e):
        while len(powers[k]) <= e:
            powers[k].append(_multiply_truncated(powers[k][-1], Q[k], degree))
        return powers[k][e]

    result = PolyFunction(Q.n, {}, field=Q.field)
    for m, a in f.terms.items():
        term = PolyFunction.constant(Q.n, a, field=Q.field)
        for k, e in enumerate(m):
            if e:
                term = _multiply_truncated(term, power(k, e), degree)
        result = result + term
    return result


def compose_truncated(P: PolyMap, Q: PolyMap, degree: int) -> PolyMap:
    """
    Composition P∘Q truncated at degree.

    Parameters
    ----------
    P: PolyMap
    Q: PolyMap
    degree: int

    Returns
    -------
    PolyMap

    Raises
    ------
    DimensionMismatchError
    """
    if P.n != Q.n:
        raise DimensionMismatchError(f"Cannot compose maps of C^{P.n} and C^{Q.n}")
    return PolyMap([substitute_truncated(p, Q, degree) for p in P.components], degree)


def _apply_linear(matrix: OperatorMatrix, components: list) -> list:
    n = len(components)
    out = []
    for i in range(n):
        acc = PolyFunction(n, {}, field=components[0].field)
        for k in range(n):
            c = matrix.entries[i][k]
            if c:
                acc = acc + components[k].scale(c)
        out.append(acc)
    return out


def invert_truncated(P: PolyMap, degree: int) -> PolyMap:
    """
    Inverse of a polynomial map fixing the origin, up to degree. Writing
    P = L + φ with L linear, the inverse Ψ solves Ψ = L⁻¹(w − φ∘Ψ); each pass of
    this fixed point iteration fixes one more degree, so degree - 1 passes
    starting from L⁻¹w are exact through degree.

    Parameters
    ----------
    P: PolyMap
    degree: int

    Returns
    -------
    PolyMap

    Raises
    ------
    NonInvertibleLinearPartError
        P has a constant term or a singular linear part
    """
    n = P.n
    if P.has_constant_term():
        raise NonInvertibleLinearPartError("Map does not fix the origin")
    keys = list(range(n))
    linear = OperatorMatrix(P.linear_part(), keys, keys, P.field)
    inverse = linear.inverse()
    phi = PolyMap.truncated([p - p.homogeneous_part(1) for p in P.components], degree)
    identity = PolyMap.identity(n, degree, field=P.field)
    psi = PolyMap(_apply_linear(inverse, list(identity.components)), degree)
    if all(p.is_zero() for p in phi.components):
        return psi
    for _ in range(max(degree - 1, 0)):
        correction = compose_truncated(phi, psi, degree)
        rhs = [w - c for w, c in zip(identity.components, correction.components)]
        psi = PolyMap(_apply_linear(inverse, rhs), degree)
    return psi


def pushforward_truncated(phi: PolyMap, X: VectorField, degree: int) -> VectorField:
    """
    Push-forward Φ_*X = (dΦ·X)∘Φ⁻¹ truncated at degree. Component i of dΦ·X is
    the derivative of Φ_i along X.

    Parameters
    ----------
    phi: PolyMap
        Map with invertible linear part fixing the origin
    X: VectorField
    degree: int

    Returns
    -------
    VectorField

    Raises
    ------
    NonInvertibleLinearPartError
    DimensionMismatchError
    """
    if phi.n != X.n:
        raise DimensionMismatchError(f"Map of C^{phi.n} pushing a field on C^{X.n}")
    X = X.truncate(degree)
    transported = PolyMap.truncated([lie_derivative_function(X, p) for p in phi.components], degree)
    inverse = invert_truncated(phi, degree)
    return compose_truncated(transported, inverse, degree).to_vector_field()
