#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Poincaré–Dulac normalisation. Starting from X = ξ0 + (higher order terms) with
ξ0 diagonal, the non-resonant part Y_d of each degree d = 2, ..., N is removed
by the change of coordinates w = Φ_d(z) = (id + h_d)^{-1}(z), where h_d solves
the homological equation L_{ξ0}(h_d) = Y_d. Since L_{ξ0} acts on z^m ∂_j as
multiplication by (m, λ) − λ_j the equation is solved term by term. X is then
replaced by its truncated push-forward Φ_d* X, so that the terms of higher
degree induced by the change are carried along exactly.

The module also provides the diagonal rescaling that makes the coefficients of
a triangular normal form as small as wanted, and the conjugacy residual used to
check a normalising transform numerically.

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from ..data.errors import (ResonantTermError, SmallDivisorError, SmallDivisorWarning,
                           NotInPoincareDomainError)
from ..data.scalars import parse_rational, is_rational_literal
from ..data.vector_fields import VectorField
from ..data.maps import PolyMap, compose_truncated, invert_truncated, pushforward_truncated
from ..feedback import progress_bar
from .resonance import (Spectrum, PoincareCertificate, poincare_check, split_resonant,
                        check_diagonal_linear_part, check_triangular)
from .flow_geometry import sphere_points
from fractions import Fraction
from warnings import warn
import pandas as pd
import numpy as np
import logging
import sympy

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"

logger = logging.getLogger(__name__)

SMALL_DIVISOR = 1e-8
SMALL_DIVISOR_WARNING = 1e-5
LOG_COLUMNS = ["degree", "j", "m", "coefficient", "divisor", "abs_divisor"]


def _homological_terms(spectrum: Spectrum, Y: VectorField) -> tuple:
    terms, records = {}, []
    for (j, m), a in Y.terms.items():
        if spectrum.is_resonant(j, m, warn_near=False):
            raise ResonantTermError(f"Term z^{m}∂{j + 1} is resonant; it cannot be removed by "
                                    f"a change of coordinates")
        divisor = spectrum.divisor(j, m)
        size = spectrum.field.modulus(divisor)
        scale = 1 + spectrum.field.modulus(spectrum.values[j])
        if size < SMALL_DIVISOR * scale:
            raise SmallDivisorError(f"Small divisor |(m,λ) - λ_j| = {size:.3e} for z^{m}∂{j + 1}",
                                    key=(j, m))
        if size < SMALL_DIVISOR_WARNING * scale:
            warn(f"Divisor |(m,λ) - λ_j| = {size:.3e} for z^{m}∂{j + 1} is close to zero",
                 SmallDivisorWarning)
        terms[(j, m)] = a / divisor
        records.append({"degree": sum(m),
                        "j": j + 1,
                        "m": m,
                        "coefficient": spectrum.field.to_complex(a),
                        "divisor": spectrum.field.to_complex(divisor),
                        "abs_divisor": size})
    return VectorField(Y.n, terms, field=Y.field), records


def homological_solve(spectrum: Spectrum,
                      Y: VectorField,
                      degree: int or None = None) -> VectorField:
    """
    Solve L_{ξ0}(h) = Y for a non-resonant field Y by dividing every term
    a·z^m ∂_j by (m, λ) − λ_j.

    Parameters
    ----------
    spectrum: Spectrum
    Y: VectorField
        Non-resonant field, homogeneous of the given degree
    degree: int, optional
        Expected degree of Y (checked when given)

    Returns
    -------
    VectorField

    Raises
    ------
    ValueError
        Y is not homogeneous of the given degree
    ResonantTermError
        Y has a resonant term
    SmallDivisorError
        A divisor is below 1e-8·(1 + |λ_j|)

    Warns
    -----
    SmallDivisorWarning
        A divisor is below 1e-5·(1 + |λ_j|)
    """
    if degree is not None and not Y.is_zero() and (Y.degree != degree or Y.low_degree != degree):
        raise ValueError(f"Field is not homogeneous of degree {degree}")
    spectrum.field.check_compatible(Y.field)
    h, _ = _homological_terms(spectrum, Y)
    return h


class NormalFormResult:
    """
    Output of poincare_dulac_normalize.

    Attributes
    ----------
    normal_form: VectorField
        Resonant through the truncation degree
    transform: PolyMap
        Near-identity map Φ with Φ_* X = normal_form up to the truncation degree
    degree_log: Pandas.DataFrame
        One row per removed term: degree, j (1-based), m, coefficient, divisor, abs_divisor
    spectrum: Spectrum
    degree: int
        Truncation degree N
    """

    def __init__(self, normal_form, transform, degree_log, spectrum, degree):
        self.normal_form = normal_form
        self.transform = transform
        self.degree_log = degree_log
        self.spectrum = spectrum
        self.degree = degree

    @property
    def is_identity(self) -> bool:
        return self.transform == PolyMap.identity(self.spectrum.n, self.degree, field=self.transform.field)

    def to_dict(self) -> dict:
        field = self.normal_form.field
        return {"degree": self.degree,
                "normal_form": [{"j": j + 1, "m": list(m), "a": field.serialize(a)}
                                for (j, m), a in self.normal_form.terms.items()],
                "transform": [[{"m": list(m), "a": field.serialize(a)} for m, a in p.terms.items()]
                              for p in self.transform.components],
                "removed_terms": int(self.degree_log.shape[0])}

    def __repr__(self):
        return f"NormalFormResult(N={self.degree}, normal_form={self.normal_form!r})"


def _drop_residue(X: VectorField, spectrum: Spectrum, degree: int) -> VectorField:
    _, residue = split_resonant(X.homogeneous_part(degree), spectrum)
    if residue.is_zero():
        return X
    scale = max(X.max_modulus(), 1.)
    if X.exact or residue.max_modulus() > 1e-9 * scale:
        raise RuntimeError(f"Non-resonant terms survived normalisation at degree {degree}")
    return X - residue


def poincare_dulac_normalize(X: VectorField,
                             degree: int,
                             spectrum: Spectrum or None = None,
                             cert: PoincareCertificate or None = None,
                             verbose: bool = False) -> NormalFormResult:
    """
    Bring X to Poincaré–Dulac normal form up to degree N. For d = 2, ..., N the
    non-resonant part Y_d of the degree-d terms is removed with Φ_d = (id + h_d)^{-1},
    L_{ξ0}(h_d) = Y_d, and X is replaced by the truncated push-forward Φ_d* X.
    Degrees without non-resonant terms are skipped, so a field already in normal
    form comes back unchanged with the identity transform.

    Parameters
    ----------
    X: VectorField
        Field with linear part exactly diag(λ) and no constant term
    degree: int
        Truncation degree N >= 1
    spectrum: Spectrum, optional
        Read from the diagonal of X when omitted
    cert: PoincareCertificate, optional
    verbose: bool (default=False)
        Show a progress bar over degrees

    Returns
    -------
    NormalFormResult

    Raises
    ------
    NonDiagonalLinearPartError
        Linear part is not diag(λ) or X has a constant term
    NotInPoincareDomainError
    SmallDivisorError
    """
    assert degree >= 1, "truncation degree must be at least 1"
    spectrum = spectrum or Spectrum.from_field(X)
    check_diagonal_linear_part(X, spectrum)
    cert = cert or poincare_check(spectrum)
    if not cert.in_domain:
        raise NotInPoincareDomainError(f"Spectrum {spectrum!r} is not in the Poincaré domain")
    field = X.field
    current = X.truncate(degree)
    transform = PolyMap.identity(X.n, degree, field=field)
    records = []
    for d in progress_bar(range(2, degree + 1), verbose=verbose, desc="normal form degrees"):
        _, nonresonant = split_resonant(current.homogeneous_part(d), spectrum)
        if nonresonant.is_zero():
            logger.debug(f"degree {d}: already resonant")
            continue
        h, removed = _homological_terms(spectrum, nonresonant)
        records.extend(removed)
        step = invert_truncated(PolyMap.from_vector_field(h, degree), degree)
        current = _drop_residue(pushforward_truncated(step, current, degree), spectrum, d)
        transform = compose_truncated(step, transform, degree)
        logger.info(f"degree {d}: removed {len(removed)} non-resonant terms")
    log = pd.DataFrame(records, columns=LOG_COLUMNS)
    return NormalFormResult(current, transform, log, spectrum, degree)


def rescale_exponent(j: int, m: tuple) -> Fraction:
    """
    Exponent of A in the factor multiplying the coefficient of z^m ∂_j under the
    diagonal rescaling z_k -> A^{1/k} z_k (1-based k): 1/j − Σ_k m_k/k. The
    component j is 0-based.

    Parameters
    ----------
    j: int
    m: tuple

    Returns
    -------
    Fraction
    """
    return Fraction(1, j + 1) - sum((Fraction(e, k + 1) for k, e in enumerate(m)), Fraction(0))


def rescale_factor(A, j: int, m: tuple):
    """
    The factor A^{rescale_exponent(j, m)} as a sympy number (exact for rational A).

    Parameters
    ----------
    A: int, Fraction, str or float
    j: int
        0-based component
    m: tuple

    Returns
    -------
    sympy.Expr
    """
    base = parse_rational(A) if is_rational_literal(A) else sympy.Float(A)
    e = rescale_exponent(j, m)
    return sympy.Pow(base, sympy.Rational(e.numerator, e.denominator))


def rescale_coefficients(X: VectorField,
                         A,
                         spectrum: Spectrum or None = None) -> VectorField:
    """
    Conjugate a triangular normal form by the diagonal map
    diag(A, A^{1/2}, ..., A^{1/n}): the coefficient of z^m ∂_j is multiplied by
    A^{1/j − Σ_k m_k/k}, which is 1 on the diagonal and below 1 on the triangular
    support when A > 1. The result stays exact when every factor is rational and
    is converted to floating point otherwise.

    Parameters
    ----------
    X: VectorField
        Field supported on the triangular Poincaré–Dulac support
    A: int, Fraction, str or float
        Scale, A > 1
    spectrum: Spectrum, optional

    Returns
    -------
    VectorField

    Raises
    ------
    AssertionError
        A <= 1
    NonTriangularFieldError
        X has a term outside the triangular support
    """
    value = parse_rational(A) if is_rational_literal(A) else sympy.Float(A)
    assert value > 1, "rescaling needs A > 1"
    spectrum = spectrum or Spectrum.from_diagonal(X)
    check_triangular(X, spectrum)
    factors = {key: rescale_factor(A, key[0], key[1]) for key in X.terms}
    if X.exact and all(f.is_Rational for f in factors.values()):
        return VectorField(X.n, {k: a * X.field.convert(factors[k]) for k, a in X.terms.items()},
                           field=X.field)
    floats = X.to_float()
    return VectorField(X.n, {k: a * complex(factors[k]) for k, a in floats.terms.items()},
                       field=floats.field)


def conjugacy_residual(X: VectorField,
                       result: NormalFormResult,
                       points: np.ndarray) -> np.ndarray:
    """
    ‖dΦ(w)·X(w) − NF(Φ(w))‖ at every row of points, for Φ the transform and NF
    the normal form of result.

    Parameters
    ----------
    X: VectorField
    result: NormalFormResult
    points: numpy.ndarray
        (P, n) complex array

    Returns
    -------
    numpy.ndarray
    """
    points = np.asarray(points, dtype=complex)
    phi = result.transform
    lhs = np.einsum("pik,pk->pi", phi.jacobian_many(points), X.evaluate_many(points))
    rhs = result.normal_form.evaluate_many(phi.evaluate_many(points))
    return np.linalg.norm(lhs - rhs, axis=1)


def residual_order(X: VectorField,
                   result: NormalFormResult,
                   r_outer: float,
                   r_inner: float,
                   samples: int = 32,
                   seed: int = 0) -> tuple:
    """
    Observed vanishing order of the conjugacy residual: the largest residual on
    spheres of radius r_outer and r_inner (same directions), their ratio and the
    exponent log(ratio)/log(r_outer/r_inner). A truncation at degree N leaves a
    residual of order N + 1.

    Parameters
    ----------
    X: VectorField
    result: NormalFormResult
    r_outer: float
    r_inner: float
    samples: int (default=32)
    seed: int (default=0)

    Returns
    -------
    (float, float)
        ratio, exponent
    """
    assert 0 < r_inner < r_outer, "radii must satisfy 0 < r_inner < r_outer"
    directions = sphere_points(X.n, samples, radius=1., seed=seed)
    outer = conjugacy_residual(X, result, r_outer * directions).max()
    inner = conjugacy_residual(X, result, r_inner * directions).max()
    if inner == 0:
        return float("inf"), float("inf")
    ratio = float(outer / inner)
    return ratio, float(np.log(ratio) / np.log(r_outer / r_inner))
