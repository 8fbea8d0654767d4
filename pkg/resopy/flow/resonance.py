#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Spectra, the Poincaré domain and resonances. A spectrum λ = (λ_1, ..., λ_n)
lies in the Poincaré domain when the origin is outside the convex hull of its
entries; then |(m, λ)| >= δ|m| for every m in N^n, where δ is the distance from
the origin to the hull, and a resonance λ_s = (m, λ) can only occur for
|m| <= C = ceil(max|λ_s| / δ). This module certifies membership of the domain,
enumerates the resonances up to that bound and builds the resonant Lie algebra
g_λ spanned by the resonant monomial fields z^m ∂_s.

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from ..data.errors import (DimensionMismatchError, NotInPoincareDomainError, NonResonantFieldError,
                           NonTriangularFieldError, NonDiagonalLinearPartError, NearResonanceWarning)
from ..data.scalars import ScalarField, field_for
from ..data.vector_fields import VectorField, multi_indices, unit
from ..data.geometry import (convex_hull_exact, origin_distance_squared_exact, ceil_sqrt,
                             convex_hull_float, origin_distance_float)
from warnings import warn
import pandas as pd
import numpy as np
import logging
import math

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"

logger = logging.getLogger(__name__)


class Spectrum:
    """
    Eigenvalues λ_1, ..., λ_n of the linear part of a vector field.

    Parameters
    ----------
    values: list
        Eigenvalues; ints, Fractions, "p/q" strings, floats, complex numbers or [re, im] pairs
    field: ScalarField, optional
        Scalar field; chosen from the values when omitted (exact if every value is rational)
    exact: bool, optional
        Force exact (True) or floating point (False) mode when field is omitted
    eps_res: float (default=1e-9)
        Relative resonance tolerance in floating point mode
    near_miss: float (default=1e-6)
        Relative distance below which a non-resonance is reported as a near resonance

    Raises
    ------
    DimensionMismatchError
        Fewer than two eigenvalues
    AssertionError
        Non-positive tolerance
    """

    def __init__(self,
                 values: list,
                 field: ScalarField or None = None,
                 exact: bool or None = None,
                 eps_res: float = 1e-9,
                 near_miss: float = 1e-6):
        values = list(values)
        if len(values) < 2:
            raise DimensionMismatchError("A spectrum needs at least two eigenvalues (n >= 2)")
        assert eps_res > 0, "eps_res must be positive"
        assert near_miss >= eps_res, "near_miss must not be below eps_res"
        self.field = field or field_for(values, exact=exact)
        self.values = tuple(self.field.convert(v) for v in values)
        self.eps_res = eps_res
        self.near_miss = near_miss

    @classmethod
    def from_field(cls, X: VectorField, **kwargs):
        """
        Spectrum read from the diagonal of the linear part of X.

        Raises
        ------
        NonDiagonalLinearPartError
            Linear part of X is not diagonal
        """
        linear = X.linear_part()
        for j in range(X.n):
            for k in range(X.n):
                if j != k and linear[j][k]:
                    raise NonDiagonalLinearPartError(f"Linear part has the off-diagonal entry "
                                                     f"z{k + 1}∂{j + 1}")
        return cls([linear[j][j] for j in range(X.n)], field=X.field, **kwargs)

    @classmethod
    def from_diagonal(cls, X: VectorField, **kwargs):
        """Spectrum read from the diagonal of the linear part of X, off-diagonal entries ignored"""
        linear = X.linear_part()
        return cls([linear[j][j] for j in range(X.n)], field=X.field, **kwargs)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def exact(self) -> bool:
        return self.field.exact

    def __len__(self):
        return self.n

    def __getitem__(self, j: int):
        return self.values[j]

    def as_complex(self) -> np.ndarray:
        return np.array([self.field.to_complex(v) for v in self.values])

    def serialize(self) -> list:
        return [self.field.serialize(v) for v in self.values]

    def pairing(self, m: tuple):
        """(m, λ) = Σ m_k λ_k"""
        acc = self.field.zero
        for e, v in zip(m, self.values):
            if e:
                acc = acc + v * e
        return acc

    def divisor(self, j: int, m: tuple):
        """(m, λ) − λ_j, the eigenvalue of L_{ξ0} on z^m ∂_j"""
        return self.pairing(m) - self.values[j]

    def _scale(self, j: int) -> float:
        return 1. + self.field.modulus(self.values[j])

    def is_resonant(self, j: int, m: tuple, warn_near: bool = True) -> bool:
        """
        Resonance test λ_j = (m, λ): exact equality in exact mode, otherwise
        |λ_j − (m, λ)| <= eps_res·(1 + |λ_j|). Non-resonances closer than
        near_miss·(1 + |λ_j|) emit a NearResonanceWarning.

        Parameters
        ----------
        j: int
            0-based component
        m: tuple
        warn_near: bool (default=True)

        Returns
        -------
        bool
        """
        d = self.divisor(j, m)
        if self.exact:
            return not d
        gap = abs(d)
        scale = self._scale(j)
        if gap <= self.eps_res * scale:
            return True
        if warn_near and gap <= self.near_miss * scale:
            warn(f"Near resonance for z^{m}∂{j + 1}: |(m,λ) - λ_j| = {gap:.3e}", NearResonanceWarning)
        return False

    def equal_entries(self, j: int, k: int) -> bool:
        d = self.values[j] - self.values[k]
        if self.exact:
            return not d
        return abs(d) <= self.eps_res * max(self._scale(j), self._scale(k))

    def diagonal_field(self) -> VectorField:
        """ξ0 = Σ λ_j z_j ∂_j"""
        return VectorField.diagonal(list(self.values), field=self.field)

    def __repr__(self):
        return f"Spectrum({[self.field.to_complex(v) for v in self.values]})"


class PoincareCertificate:
    """
    Outcome of the Poincaré domain test.

    Attributes
    ----------
    in_domain: bool
        True when the origin is outside the convex hull of the eigenvalues
    hull: list
        Extreme points of the hull as (re, im) pairs (Fractions in exact mode)
    delta: float
        Distance from the origin to the hull
    delta_squared: Fraction or None
        Exact squared distance (exact mode only)
    bound_C: int or None
        Largest order |m| any resonance can have; None outside the domain
    exact: bool
    """

    def __init__(self,
                 in_domain: bool,
                 hull: list,
                 delta: float,
                 bound_C: int or None,
                 exact: bool,
                 delta_squared=None):
        self.in_domain = in_domain
        self.hull = hull
        self.delta = delta
        self.bound_C = bound_C
        self.exact = exact
        self.delta_squared = delta_squared

    def to_dict(self) -> dict:
        def out(x):
            if self.exact:
                return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
            return float(x)
        return {"in_domain": self.in_domain,
                "hull": [[out(x), out(y)] for x, y in self.hull],
                "delta": float(self.delta),
                "delta_squared": out(self.delta_squared) if self.delta_squared is not None else None,
                "bound_C": self.bound_C,
                "exact": self.exact}

    def __repr__(self):
        return f"PoincareCertificate(in_domain={self.in_domain}, delta={self.delta}, bound_C={self.bound_C})"


def poincare_check(spectrum: Spectrum) -> PoincareCertificate:
    """
    Decide whether the spectrum lies in the Poincaré domain and compute the
    distance δ from the origin to the convex hull of the eigenvalues together with
    the resonance bound C. Exact spectra are handled with rational arithmetic; in
    floating point mode the spectrum is accepted only when δ > 10·eps_res.

    Parameters
    ----------
    spectrum: Spectrum

    Returns
    -------
    PoincareCertificate
    """
    if spectrum.exact:
        points = [(spectrum.field.real(v), spectrum.field.imag(v)) for v in spectrum.values]
        hull = convex_hull_exact(points)
        d2 = origin_distance_squared_exact(hull)
        in_domain = d2 > 0
        bound = None
        if in_domain:
            largest = max(x * x + y * y for x, y in points)
            bound = ceil_sqrt(largest / d2)
        cert = PoincareCertificate(in_domain, hull, math.sqrt(d2), bound, True, delta_squared=d2)
    else:
        z = spectrum.as_complex()
        points = [(v.real, v.imag) for v in z]
        hull = convex_hull_float(points)
        delta = origin_distance_float(points)
        in_domain = delta > 10 * spectrum.eps_res
        bound = int(math.ceil(max(abs(v) for v in z) / delta)) if in_domain else None
        cert = PoincareCertificate(in_domain, hull, delta, bound, False)
    logger.debug(f"Poincaré check: in_domain={cert.in_domain}, delta={cert.delta}, C={cert.bound_C}")
    return cert


def resonance_bound(cert: PoincareCertificate, spectrum: Spectrum) -> int:
    """
    The bound C = ceil(max_s |λ_s| / δ) on the order of a resonance.

    Parameters
    ----------
    cert: PoincareCertificate
    spectrum: Spectrum

    Returns
    -------
    int

    Raises
    ------
    NotInPoincareDomainError
        Spectrum outside the Poincaré domain
    """
    if not cert.in_domain:
        raise NotInPoincareDomainError(f"Spectrum {spectrum!r} is not in the Poincaré domain "
                                       f"(distance from 0 to the hull is {cert.delta})")
    return cert.bound_C


def _certified_bound(spectrum: Spectrum, cert: PoincareCertificate or None) -> int:
    cert = cert or poincare_check(spectrum)
    return resonance_bound(cert, spectrum)


class Resonance:
    """
    A resonance λ_s = (m, λ).

    Attributes
    ----------
    s: int
        0-based component
    m: tuple
    trivial: bool
        True iff m = e_s
    """

    def __init__(self, s: int, m: tuple):
        assert sum(m) >= 1, "a resonance has |m| >= 1"
        self.s = s
        self.m = tuple(m)
        self.trivial = self.m == unit(len(m), s)

    @property
    def order(self) -> int:
        return sum(self.m)

    @property
    def key(self) -> tuple:
        return self.s, self.m

    def field(self, field: ScalarField, coefficient=1) -> VectorField:
        return VectorField.monomial(len(self.m), self.s, self.m, coefficient, field=field)

    def to_dict(self) -> dict:
        return {"s": self.s + 1, "m": list(self.m), "order": self.order, "trivial": self.trivial}

    def __eq__(self, other):
        return isinstance(other, Resonance) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Resonance(s={self.s + 1}, m={self.m})"


def enumerate_resonances(spectrum: Spectrum,
                         include_trivial: bool = True,
                         cert: PoincareCertificate or None = None,
                         max_order: int or None = None) -> list:
    """
    Every resonance λ_s = (m, λ) with 1 <= |m| <= C, ordered by |m|, then
    reverse-lexicographically on m, then by s.

    Parameters
    ----------
    spectrum: Spectrum
    include_trivial: bool (default=True)
        Include the trivial resonances m = e_s
    cert: PoincareCertificate, optional
        Computed when omitted
    max_order: int, optional
        Search up to this order instead of C (for brute force comparisons)

    Returns
    -------
    list of Resonance

    Raises
    ------
    NotInPoincareDomainError
    """
    bound = _certified_bound(spectrum, cert)
    top = bound if max_order is None else max_order
    out = []
    for d in range(1, top + 1):
        for m in multi_indices(spectrum.n, d):
            for s in range(spectrum.n):
                if spectrum.is_resonant(s, m):
                    r = Resonance(s, m)
                    if include_trivial or not r.trivial:
                        out.append(r)
    logger.debug(f"{len(out)} resonances with |m| <= {top}")
    return out


def resonance_table(spectrum: Spectrum,
                    include_trivial: bool = True,
                    cert: PoincareCertificate or None = None) -> pd.DataFrame:
    """
    Resonances as a DataFrame with columns s (1-based), m, order, trivial and
    defect |λ_s − (m, λ)|.

    Parameters
    ----------
    spectrum: Spectrum
    include_trivial: bool (default=True)
    cert: PoincareCertificate, optional

    Returns
    -------
    Pandas.DataFrame
    """
    rows = []
    for r in enumerate_resonances(spectrum, include_trivial=include_trivial, cert=cert):
        rows.append({"s": r.s + 1,
                     "m": r.m,
                     "order": r.order,
                     "trivial": r.trivial,
                     "defect": spectrum.field.modulus(spectrum.divisor(r.s, r.m))})
    return pd.DataFrame(rows, columns=["s", "m", "order", "trivial", "defect"])


class ResonantBasis:
    """
    Ordered basis of the resonant Lie algebra g_λ: one monomial field z^m ∂_s per
    resonance, trivial resonances included.

    Parameters
    ----------
    spectrum: Spectrum
    resonances: list of Resonance

    Raises
    ------
    ValueError
        Duplicate resonance
    """

    def __init__(self,
                 spectrum: Spectrum,
                 resonances: list):
        keys = [r.key for r in resonances]
        if len(set(keys)) != len(keys):
            raise ValueError("Duplicate resonance in basis")
        self.spectrum = spectrum
        self.resonances = list(resonances)
        self.keys = keys
        self._index = {k: i for i, k in enumerate(keys)}

    @property
    def dim(self) -> int:
        return len(self.keys)

    @property
    def field(self) -> ScalarField:
        return self.spectrum.field

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.keys)

    def __contains__(self, key) -> bool:
        return key in self._index

    def index(self, key) -> int:
        return self._index[key]

    def fields(self) -> list:
        """Basis elements as VectorFields"""
        return [r.field(self.field) for r in self.resonances]

    def coordinates(self, X: VectorField) -> list:
        """
        Coordinates of a field of g_λ in this basis.

        Raises
        ------
        NonResonantFieldError
            X has a term outside the basis
        """
        coords = [self.field.zero] * self.dim
        for key, a in X.terms.items():
            if key not in self._index:
                j, m = key
                raise NonResonantFieldError(f"Term z^{m}∂{j + 1} is not in g_λ")
            coords[self._index[key]] = a
        return coords

    def to_field(self, coordinates: list) -> VectorField:
        """Field with the given coordinates"""
        terms = {k: c for k, c in zip(self.keys, coordinates)}
        return VectorField(self.spectrum.n, terms, field=self.field)

    def describe(self) -> list:
        return [f"z^{m}∂{s + 1}" for s, m in self.keys]


def resonant_basis(spectrum: Spectrum,
                   cert: PoincareCertificate or None = None) -> ResonantBasis:
    """
    Basis of g_λ: every resonant monomial field z^m ∂_s, |m| >= 1, including the
    trivial ones z_s ∂_s.

    Parameters
    ----------
    spectrum: Spectrum
    cert: PoincareCertificate, optional

    Returns
    -------
    ResonantBasis

    Raises
    ------
    NotInPoincareDomainError
    """
    return ResonantBasis(spectrum, enumerate_resonances(spectrum, include_trivial=True, cert=cert))


def split_resonant(X: VectorField, spectrum: Spectrum) -> tuple:
    """
    Unique decomposition X = X_r + X_nr into resonant and non-resonant terms.

    Parameters
    ----------
    X: VectorField
    spectrum: Spectrum

    Returns
    -------
    (VectorField, VectorField)

    Raises
    ------
    DimensionMismatchError
    """
    if X.n != spectrum.n:
        raise DimensionMismatchError(f"Field on C^{X.n} split against a spectrum of length {spectrum.n}")
    resonant, other = {}, {}
    for (j, m), a in X.terms.items():
        target = resonant if spectrum.is_resonant(j, m) else other
        target[(j, m)] = a
    return VectorField(X.n, resonant, field=X.field), VectorField(X.n, other, field=X.field)


class DulacSupport:
    """
    Support of the triangular Poincaré–Dulac normal form.

    Attributes
    ----------
    triangular: list
        Keys (j, m) of resonances with j >= 1 (0-based), |m| >= 2 and m_k = 0 for k >= j
    jordan_slots: list
        (key, resonant) for the slots (j, e_{j-1}), j >= 1; resonant is True when λ_j = λ_{j-1}
    diagonal: list
        Keys (j, e_j) of the linear diagonal part
    """

    def __init__(self, triangular: list, jordan_slots: list, diagonal: list):
        self.triangular = triangular
        self.jordan_slots = jordan_slots
        self.diagonal = diagonal

    def allowed_keys(self) -> set:
        """Keys a triangular normal form may carry (Jordan slots only when resonant)"""
        return set(self.triangular) | set(self.diagonal) | {k for k, res in self.jordan_slots if res}

    def to_dict(self) -> dict:
        return {"triangular": [{"j": j + 1, "m": list(m)} for j, m in self.triangular],
                "jordan_slots": [{"j": j + 1, "m": list(m), "resonant": res}
                                 for (j, m), res in self.jordan_slots]}


def poincare_dulac_support(spectrum: Spectrum,
                           cert: PoincareCertificate or None = None) -> DulacSupport:
    """
    The strictly triangular resonant monomials (j, m), m_k = 0 for k >= j and |m| >= 2,
    plus the Jordan slots (j, e_{j-1}) listed separately with their resonance flag.

    Parameters
    ----------
    spectrum: Spectrum
    cert: PoincareCertificate, optional

    Returns
    -------
    DulacSupport

    Raises
    ------
    NotInPoincareDomainError
    """
    n = spectrum.n
    triangular = []
    for r in enumerate_resonances(spectrum, include_trivial=False, cert=cert):
        if r.s >= 1 and r.order >= 2 and all(r.m[k] == 0 for k in range(r.s, n)):
            triangular.append(r.key)
    jordan = [((j, unit(n, j - 1)), spectrum.equal_entries(j, j - 1)) for j in range(1, n)]
    diagonal = [(j, unit(n, j)) for j in range(n)]
    return DulacSupport(triangular, jordan, diagonal)


def check_diagonal_linear_part(X: VectorField, spectrum: Spectrum):
    """
    Raises
    ------
    NonDiagonalLinearPartError
        X has a constant term, an off-diagonal linear term, or a diagonal different from λ
    """
    if X.n != spectrum.n:
        raise DimensionMismatchError(f"Field on C^{X.n} with a spectrum of length {spectrum.n}")
    zero = (0,) * X.n
    for j in range(X.n):
        if (j, zero) in X.terms:
            raise NonDiagonalLinearPartError(f"Field has a constant term in component {j + 1}")
    linear = X.linear_part()
    for j in range(X.n):
        for k in range(X.n):
            target = spectrum.values[j] if j == k else spectrum.field.zero
            if not spectrum.field.is_zero(linear[j][k] - target, scale=spectrum._scale(j)):
                raise NonDiagonalLinearPartError(f"Linear part differs from diag(λ) at z{k + 1}∂{j + 1}")


def check_triangular(X: VectorField,
                     spectrum: Spectrum,
                     cert: PoincareCertificate or None = None) -> DulacSupport:
    """
    Verify that X is ξ0 plus terms on the triangular Poincaré–Dulac support. The
    only linear terms allowed off the diagonal are resonant Jordan slots z_{j-1}∂_j.

    Parameters
    ----------
    X: VectorField
    spectrum: Spectrum
    cert: PoincareCertificate, optional

    Returns
    -------
    DulacSupport

    Raises
    ------
    NonTriangularFieldError
        X has a constant term, a diagonal different from λ or a term outside the support
    """
    if X.n != spectrum.n:
        raise DimensionMismatchError(f"Field on C^{X.n} with a spectrum of length {spectrum.n}")
    support = poincare_dulac_support(spectrum, cert=cert)
    allowed = support.allowed_keys()
    linear = X.linear_part()
    for j in range(X.n):
        if not spectrum.field.is_zero(linear[j][j] - spectrum.values[j], scale=spectrum._scale(j)):
            raise NonTriangularFieldError(f"Diagonal entry {j + 1} of the linear part differs from λ")
    for j, m in X.terms:
        if (j, m) not in allowed:
            raise NonTriangularFieldError(f"Term z^{m}∂{j + 1} is not a triangular resonant monomial")
    return support


def matching_spectrum(X: VectorField, spectrum: Spectrum or None = None) -> Spectrum:
    """
    The spectrum of X: read from the diagonal when omitted, otherwise checked
    against the diagonal of the linear part.

    Raises
    ------
    DimensionMismatchError
    NonDiagonalLinearPartError
        Diagonal of the linear part differs from the given spectrum
    """
    if spectrum is None:
        return Spectrum.from_diagonal(X)
    if spectrum.n != X.n:
        raise DimensionMismatchError(f"Field on C^{X.n} with a spectrum of length {spectrum.n}")
    linear = X.linear_part()
    for j in range(X.n):
        if not spectrum.field.is_zero(linear[j][j] - spectrum.values[j], scale=spectrum._scale(j)):
            raise NonDiagonalLinearPartError(f"Diagonal entry {j + 1} of the linear part differs from λ")
    return spectrum
