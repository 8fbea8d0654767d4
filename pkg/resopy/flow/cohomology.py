#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Finite probes of the operator L_ξ on the cohomology models of a resonant field.
The top cohomology of the punctured space is modelled by Laurent series
supported on all-negative exponents; L_ξ acts on it by differentiation
followed by projection onto the all-negative exponents, the remaining terms
being coboundaries. Every probe assembles its matrix exactly in exact mode and
extends the codomain instead of truncating the domain, so a kernel found is a
true kernel and an injectivity verdict is a certificate.

Probes provided:

* sigma: L_ξ on functions z^m, m in the negative box
* theta: L_ξ = [ξ, .] on fields z^m ∂_s, m in the negative box
* H0: kernel of L_ξ on polynomial functions and reachability of the constants
* g_λ^⊥: L_ξ on non-resonant fields, output projected to its non-resonant part

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from ..data.errors import LaurentBoxError
from ..data.vector_fields import (PolyFunction, LaurentFunction, LaurentVectorField, VectorField,
                                  bracket, lie_derivative_function, monomial_key, field_key,
                                  multi_indices_upto, field_monomials_upto)
from ..data.linalg import OperatorMatrix, label_str
from ..feedback import progress_bar
from .resonance import (Spectrum, PoincareCertificate, poincare_check, resonance_bound,
                        check_triangular, matching_spectrum)
from .versal import require_resonant
from itertools import product
import pandas as pd
import logging

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"

logger = logging.getLogger(__name__)

DISCARD_COLUMNS = ["column", "key", "coefficient"]


class NegBox:
    """
    Exponents m in Z^n with -D <= m_i <= -1 for every i.

    Parameters
    ----------
    n: int
    depth: int
        D >= 1
    """

    def __init__(self, n: int, depth: int):
        assert n >= 1, "ambient dimension must be positive"
        assert depth >= 1, "depth must be at least 1"
        self.n = n
        self.depth = depth

    @property
    def bounds(self) -> tuple:
        return (-self.depth,) * self.n, (-1,) * self.n

    def indices(self) -> list:
        """Every exponent of the box, in canonical monomial order"""
        values = range(-self.depth, 0)
        return sorted(product(values, repeat=self.n), key=monomial_key)

    def __contains__(self, m) -> bool:
        return len(m) == self.n and all(-self.depth <= x <= -1 for x in m)

    def __len__(self):
        return self.depth ** self.n

    def __repr__(self):
        return f"NegBox(n={self.n}, D={self.depth})"


def all_negative(m: tuple) -> bool:
    return all(x < 0 for x in m)


class ProbeResult:
    """
    Matrix of a projected operator with its verdicts.

    Attributes
    ----------
    name: str
    operator: OperatorMatrix
        Projected operator, rows restricted to the kept codomain keys
    discarded: Pandas.DataFrame
        Terms removed by the projection: column label, key and coefficient
    depth: int
    injective: bool
    square_bijective: bool
        True when the matrix is square and invertible
    """

    def __init__(self, name: str, operator: OperatorMatrix, discarded: pd.DataFrame, depth: int):
        self.name = name
        self.operator = operator
        self.discarded = discarded
        self.depth = depth
        self.injective = operator.is_injective()
        self.square_bijective = operator.is_square_bijective()

    @property
    def rank(self) -> int:
        return self.operator.rank()

    @property
    def verdict(self) -> str:
        return "injective" if self.injective else "not injective"

    def to_dict(self) -> dict:
        return {"name": self.name,
                "depth": self.depth,
                "shape": list(self.operator.shape),
                "rank": self.rank,
                "injective": bool(self.injective),
                "square_bijective": bool(self.square_bijective),
                "discarded_terms": int(self.discarded.shape[0]),
                "verdict": self.verdict}

    def __repr__(self):
        return f"ProbeResult({self.name}, shape={self.operator.shape}, {self.verdict})"


def _project(images: list, labels: list, keep: callable, field, sort_key) -> tuple:
    kept, records = [], []
    for label, image in zip(labels, images):
        column = {}
        for key, value in image.items():
            if keep(key):
                column[key] = value
            else:
                records.append({"column": label_str(label),
                                "key": label_str(key),
                                "coefficient": field.to_complex(value)})
        kept.append(column)
    rows = sorted({k for column in kept for k in column}, key=sort_key)
    return kept, rows, pd.DataFrame(records, columns=DISCARD_COLUMNS)


def _check_codomain(rows: list, depth: int, exponent: callable):
    for key in rows:
        if any(x < -(depth + 1) for x in exponent(key)):
            raise LaurentBoxError(f"Projected image reaches {label_str(key)}, below -(D+1) = {-(depth + 1)}")


def _triangular_setup(xi: VectorField, spectrum: Spectrum or None, cert: PoincareCertificate or None):
    spectrum = matching_spectrum(xi, spectrum)
    cert = cert or poincare_check(spectrum)
    check_triangular(xi, spectrum, cert=cert)
    return spectrum


def neg_laurent_matrix_sigma(xi: VectorField,
                             depth: int,
                             spectrum: Spectrum or None = None,
                             cert: PoincareCertificate or None = None,
                             verbose: bool = False) -> ProbeResult:
    """
    L_ξ on Laurent monomials z^m, m in NegBox(D), projected onto all-negative
    exponents. A resonant triangular term lowers one exponent by at most one,
    so the image lies in the exponents with entries >= -(D+1), which is checked.
    For ξ = ξ0 the matrix is diagonal with entries (m, λ).

    Parameters
    ----------
    xi: VectorField
        Resonant triangular field
    depth: int
        D >= 1
    spectrum: Spectrum, optional
    cert: PoincareCertificate, optional
    verbose: bool (default=False)

    Returns
    -------
    ProbeResult

    Raises
    ------
    NonTriangularFieldError
    LaurentBoxError
        The projected image leaves the extended codomain (internal error)
    """
    _triangular_setup(xi, spectrum, cert)
    box = NegBox(xi.n, depth)
    domain = box.indices()
    images = []
    for m in progress_bar(domain, verbose=verbose, desc="sigma columns"):
        f = LaurentFunction(xi.n, {m: 1}, field=xi.field, box=box.bounds)
        images.append(dict(lie_derivative_function(xi, f).terms))
    columns, rows, discarded = _project(images, domain, all_negative, xi.field, monomial_key)
    _check_codomain(rows, depth, lambda m: m)
    operator = OperatorMatrix.from_columns(columns, domain, xi.field, row_labels=rows,
                                           domain=f"functions on NegBox({depth})",
                                           codomain="all-negative exponents")
    result = ProbeResult("sigma", operator, discarded, depth)
    logger.info(f"sigma probe D={depth}: shape {operator.shape}, {result.verdict}")
    return result


def neg_laurent_matrix_theta(xi: VectorField,
                             depth: int,
                             spectrum: Spectrum or None = None,
                             cert: PoincareCertificate or None = None,
                             verbose: bool = False) -> ProbeResult:
    """
    L_ξ = [ξ, .] on Laurent fields z^m ∂_s, m in NegBox(D), projected onto
    fields with all-negative exponents. For ξ = ξ0 the matrix is diagonal with
    entries (m − e_s, λ).

    Parameters
    ----------
    xi: VectorField
        Resonant triangular field
    depth: int
        D >= 1
    spectrum: Spectrum, optional
    cert: PoincareCertificate, optional
    verbose: bool (default=False)

    Returns
    -------
    ProbeResult

    Raises
    ------
    NonTriangularFieldError
    LaurentBoxError
    """
    _triangular_setup(xi, spectrum, cert)
    box = NegBox(xi.n, depth)
    domain = [(s, m) for s in range(xi.n) for m in box.indices()]
    images = []
    for s, m in progress_bar(domain, verbose=verbose, desc="theta columns"):
        Y = LaurentVectorField(xi.n, {(s, m): 1}, field=xi.field, box=box.bounds)
        images.append(dict(bracket(xi, Y).terms))
    columns, rows, discarded = _project(images, domain, lambda key: all_negative(key[1]), xi.field,
                                        field_key)
    _check_codomain(rows, depth, lambda key: key[1])
    operator = OperatorMatrix.from_columns(columns, domain, xi.field, row_labels=rows,
                                           domain=f"fields on NegBox({depth})",
                                           codomain="all-negative fields")
    result = ProbeResult("theta", operator, discarded, depth)
    logger.info(f"theta probe D={depth}: shape {operator.shape}, {result.verdict}")
    return result


class H0Report:
    """
    Kernel and constant reachability of L_ξ on polynomial functions.

    Attributes
    ----------
    operator: OperatorMatrix
    kernel: list of PolyFunction
    constant_unreachable: bool
        True when the constant 1 is not in the image
    rank: int
    augmented_rank: int
        Rank with the constant 1 appended as a column
    degree: int
    """

    def __init__(self, operator, kernel, rank, augmented_rank, degree):
        self.operator = operator
        self.kernel = kernel
        self.rank = rank
        self.augmented_rank = augmented_rank
        self.degree = degree

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel)

    @property
    def kernel_is_constants(self) -> bool:
        """True when the kernel is span{1}"""
        if self.kernel_dim != 1:
            return False
        f = self.kernel[0]
        return list(f.terms) == [(0,) * f.n]

    @property
    def constant_unreachable(self) -> bool:
        return self.augmented_rank > self.rank

    def to_dict(self) -> dict:
        return {"degree": self.degree,
                "kernel_dim": self.kernel_dim,
                "kernel_is_constants": bool(self.kernel_is_constants),
                "rank": self.rank,
                "augmented_rank": self.augmented_rank,
                "constant_unreachable": bool(self.constant_unreachable)}

    def __repr__(self):
        return f"H0Report(D={self.degree}, kernel_dim={self.kernel_dim})"


def h0_sigma_structure(xi: VectorField,
                       degree: int,
                       spectrum: Spectrum or None = None,
                       cert: PoincareCertificate or None = None,
                       verbose: bool = False) -> H0Report:
    """
    Kernel of L_ξ from functions of degree <= D into the span of every monomial
    reached (degree <= D + C), and whether the constant 1 lies in the image.

    Parameters
    ----------
    xi: VectorField
        Resonant field
    degree: int
        D >= 0
    spectrum: Spectrum, optional
    cert: PoincareCertificate, optional
    verbose: bool (default=False)

    Returns
    -------
    H0Report

    Raises
    ------
    NonResonantFieldError
    NotInPoincareDomainError
    """
    assert degree >= 0, "degree must be non-negative"
    spectrum = matching_spectrum(xi, spectrum)
    require_resonant(xi, spectrum)
    bound = resonance_bound(cert or poincare_check(spectrum), spectrum)
    zero = (0,) * xi.n
    domain = multi_indices_upto(xi.n, degree)
    images = []
    for m in progress_bar(domain, verbose=verbose, desc="H0 columns"):
        f = PolyFunction(xi.n, {m: 1}, field=xi.field)
        images.append(dict(lie_derivative_function(xi, f).terms))
    rows = sorted({k for image in images for k in image} | {zero}, key=monomial_key)
    assert max(sum(m) for m in rows) <= degree + bound, "codomain exceeds degree D + C"
    operator = OperatorMatrix.from_columns(images, domain, xi.field, row_labels=rows,
                                           domain=f"functions of degree <= {degree}",
                                           codomain="functions touched by L_ξ")
    kernel = [PolyFunction(xi.n, dict(zip(domain, v)), field=xi.field) for v in operator.nullspace()]
    report = H0Report(operator, kernel, operator.rank(), operator.augmented_rank({zero: 1}), degree)
    logger.info(f"H0 probe D={degree}: kernel dimension {report.kernel_dim}, "
                f"constant unreachable {report.constant_unreachable}")
    return report


def gperp_injectivity(xi: VectorField,
                      degree: int,
                      spectrum: Spectrum or None = None,
                      cert: PoincareCertificate or None = None,
                      verbose: bool = False) -> ProbeResult:
    """
    L_ξ on the non-resonant monomial fields of degree <= D, output projected onto
    its non-resonant part. Brackets of resonant and non-resonant fields are
    non-resonant, so the discarded part is expected to be empty.

    Parameters
    ----------
    xi: VectorField
        Resonant field
    degree: int
        D >= 0
    spectrum: Spectrum, optional
    cert: PoincareCertificate, optional
    verbose: bool (default=False)

    Returns
    -------
    ProbeResult

    Raises
    ------
    NonResonantFieldError
    NotInPoincareDomainError
    """
    assert degree >= 0, "degree must be non-negative"
    spectrum = matching_spectrum(xi, spectrum)
    require_resonant(xi, spectrum)
    resonance_bound(cert or poincare_check(spectrum), spectrum)
    domain = [(j, m) for j, m in field_monomials_upto(xi.n, degree)
              if not spectrum.is_resonant(j, m, warn_near=False)]
    images = []
    for j, m in progress_bar(domain, verbose=verbose, desc="g_λ^⊥ columns"):
        image = bracket(xi, VectorField.monomial(xi.n, j, m, 1, field=xi.field))
        images.append(dict(image.terms))
    resonant_keys = {k for image in images for k in image
                     if spectrum.is_resonant(k[0], k[1], warn_near=False)}
    columns, rows, discarded = _project(images, domain, lambda key: key not in resonant_keys, xi.field,
                                        field_key)
    operator = OperatorMatrix.from_columns(columns, domain, xi.field, row_labels=rows,
                                           domain=f"non-resonant fields of degree <= {degree}",
                                           codomain="non-resonant fields")
    result = ProbeResult("gperp", operator, discarded, degree)
    logger.info(f"g_λ^⊥ probe D={degree}: shape {operator.shape}, {result.verdict}")
    return result
