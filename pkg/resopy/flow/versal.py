#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Deformations of a resonant vector field ξ. A deformation direction X of ξ
inside g_λ is trivial to first order when it lies in span(ξ) + L_ξ(g_λ); a
complement S of that subspace in g_λ parametrises a versal family ξ + Σ s_i S_i.
This module assembles the matrix of L_ξ on the resonant basis, computes the
complement, classifies deformation directions (their Kodaira–Spencer class)
and checks the commutant and direct sum statements on finite truncations.

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from ..data.errors import NonResonantFieldError, BracketEscapeError
from ..data.vector_fields import VectorField, bracket, field_key, field_monomials_upto
from ..data.linalg import OperatorMatrix, complement_coordinates, orthogonal_complement
from ..feedback import progress_bar
from .resonance import (Spectrum, PoincareCertificate, ResonantBasis, poincare_check, resonance_bound,
                        resonant_basis, split_resonant, matching_spectrum)
import logging

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"

logger = logging.getLogger(__name__)


def require_resonant(xi: VectorField, spectrum: Spectrum):
    """
    Raises
    ------
    NonResonantFieldError
        ξ has non-resonant terms
    """
    _, nonresonant = split_resonant(xi, spectrum)
    if not nonresonant.is_zero():
        keys = ", ".join(f"z^{m}∂{j + 1}" for j, m in nonresonant.keys())
        raise NonResonantFieldError(f"Field has non-resonant terms ({keys}); "
                                    f"bring it to normal form with poincare_dulac_normalize first")


def lie_images(xi: VectorField, keys: list, verbose: bool = False) -> list:
    """Terms of L_ξ(z^m ∂_j) for every key (j, m), as dictionaries"""
    out = []
    for j, m in progress_bar(keys, verbose=verbose, desc="L_ξ columns"):
        monomial = VectorField.monomial(xi.n, j, m, 1, field=xi.field)
        out.append(dict(bracket(xi, monomial).terms))
    return out


def l_xi_matrix_on_g(xi: VectorField, basis: ResonantBasis) -> OperatorMatrix:
    """
    Matrix of L_ξ restricted to g_λ in the resonant basis: column k holds the
    coordinates of [ξ, basis_k].

    Parameters
    ----------
    xi: VectorField
        Resonant field
    basis: ResonantBasis

    Returns
    -------
    OperatorMatrix
        Square matrix with rows and columns labelled by the basis keys

    Raises
    ------
    NonResonantFieldError
        ξ has non-resonant terms
    BracketEscapeError
        A bracket left g_λ (an internal error; brackets of resonant fields are resonant)
    """
    require_resonant(xi, basis.spectrum)
    columns = []
    for key, image in zip(basis.keys, lie_images(xi, basis.keys)):
        for k in image:
            if k not in basis:
                raise BracketEscapeError(f"[ξ, z^{key[1]}∂{key[0] + 1}] has the term z^{k[1]}∂{k[0] + 1} "
                                         f"outside g_λ")
        columns.append(image)
    return OperatorMatrix.from_columns(columns, basis.keys, basis.field, row_labels=basis.keys,
                                       domain="g_λ", codomain="g_λ")


class VersalResult:
    """
    Versal deformation data of a resonant field ξ.

    Attributes
    ----------
    xi: VectorField
    spectrum: Spectrum
    basis: ResonantBasis
    operator: OperatorMatrix
        L_ξ on g_λ
    span_matrix: OperatorMatrix
        [coordinates of ξ | L_ξ on g_λ]; its column span is V = span(ξ) + L_ξ(g_λ)
    dim_g: int
    rank_V: int
    kernel_dim: int
        dim ker(L_ξ restricted to g_λ)
    complement_basis: list of VectorField
        Basis of the parameter space S, a complement of V in g_λ
    method: str
        'coordinate' or 'orthogonal'
    """

    def __init__(self, xi, spectrum, basis, operator, span_matrix, rank_V, kernel_dim,
                 complement_basis, method):
        self.xi = xi
        self.spectrum = spectrum
        self.basis = basis
        self.operator = operator
        self.span_matrix = span_matrix
        self.dim_g = basis.dim
        self.rank_V = rank_V
        self.kernel_dim = kernel_dim
        self.complement_basis = complement_basis
        self.method = method

    @property
    def dim_S(self) -> int:
        return len(self.complement_basis)

    def unfold(self, parameters: list) -> VectorField:
        """
        The member ξ + Σ s_i·S_i of the versal family.

        Parameters
        ----------
        parameters: list
            One value per complement direction

        Returns
        -------
        VectorField
        """
        assert len(parameters) == self.dim_S, f"expected {self.dim_S} parameters"
        out = self.xi
        for s, direction in zip(parameters, self.complement_basis):
            out = out + direction.scale(s)
        return out

    def to_dict(self) -> dict:
        field = self.spectrum.field
        return {"dim_g": self.dim_g,
                "rank_V": self.rank_V,
                "dim_S": self.dim_S,
                "kernel_dim": self.kernel_dim,
                "method": self.method,
                "basis": [{"j": j + 1, "m": list(m)} for j, m in self.basis.keys],
                "complement_basis": [[{"j": j + 1, "m": list(m), "a": field.serialize(a)}
                                      for (j, m), a in S.terms.items()]
                                     for S in self.complement_basis]}

    def __repr__(self):
        return f"VersalResult(dim_g={self.dim_g}, rank_V={self.rank_V}, dim_S={self.dim_S})"


def versal_space(xi: VectorField,
                 spectrum: Spectrum or None = None,
                 method: str = "coordinate",
                 cert: PoincareCertificate or None = None) -> VersalResult:
    """
    Parameter space of the versal deformation of ξ: a complement S of
    V = span(ξ) + L_ξ(g_λ) inside g_λ. The rank of V is read from
    [coordinates of ξ | matrix of L_ξ on g_λ] (exact row reduction or SVD).

    Parameters
    ----------
    xi: VectorField
        Resonant field whose linear diagonal is λ
    spectrum: Spectrum, optional
        Read from the diagonal of ξ when omitted
    method: str (default='coordinate')
        'coordinate' picks complement directions among the resonant monomials,
        scanning greedily from the last basis monomial down; 'orthogonal'
        returns a basis of the hermitian orthogonal complement of V
    cert: PoincareCertificate, optional

    Returns
    -------
    VersalResult

    Raises
    ------
    NonResonantFieldError
        ξ has non-resonant terms; normalize it first
    NotInPoincareDomainError
    """
    assert method in ("coordinate", "orthogonal"), "method must be 'coordinate' or 'orthogonal'"
    spectrum = matching_spectrum(xi, spectrum)
    require_resonant(xi, spectrum)
    basis = resonant_basis(spectrum, cert=cert)
    operator = l_xi_matrix_on_g(xi, basis)
    xi_column = OperatorMatrix([[c] for c in basis.coordinates(xi)], basis.keys, ["ξ"], basis.field)
    span_matrix = xi_column.hstack(operator)
    rank_V = span_matrix.rank()
    if method == "coordinate":
        fields = basis.fields()
        complement = [fields[i] for i in complement_coordinates(span_matrix, prefer_last=True)]
    else:
        complement = [basis.to_field(v) for v in orthogonal_complement(span_matrix)]
    kernel_dim = basis.dim - operator.rank()
    logger.info(f"versal space: dim g_λ = {basis.dim}, rank V = {rank_V}, dim S = {len(complement)}")
    return VersalResult(xi, spectrum, basis, operator, span_matrix, rank_V, kernel_dim, complement, method)


def kodaira_spencer_class(xi: VectorField,
                          X: VectorField,
                          result: VersalResult) -> list:
    """
    Class of the deformation direction X in g_λ / V, V = span(ξ) + L_ξ(g_λ),
    as coordinates over result.complement_basis. The non-resonant part of X is
    discarded first (L_ξ is invertible on non-resonant fields). The resonant
    part is written in the basis [independent columns of V | S] and the
    S-coordinates returned.

    Parameters
    ----------
    xi: VectorField
        The field result was computed for
    X: VectorField
    result: VersalResult

    Returns
    -------
    list
        One scalar per complement direction

    Raises
    ------
    ValueError
        result was computed for a different field
    """
    if not result.xi.equals(xi):
        raise ValueError("VersalResult belongs to a different field ξ")
    resonant, _ = split_resonant(X, result.spectrum)
    basis = result.basis
    field = basis.field
    spanning = result.span_matrix.pivot_columns()
    columns = [result.span_matrix.column(c) for c in spanning]
    columns += [dict(zip(basis.keys, basis.coordinates(S))) for S in result.complement_basis]
    labels = [("V", c) for c in spanning] + [("S", i) for i in range(result.dim_S)]
    system = OperatorMatrix.from_columns(columns, labels, field, row_labels=basis.keys)
    target = dict(zip(basis.keys, basis.coordinates(resonant)))
    solution = system.solve(target)
    assert solution is not None, "[V | S] must span g_λ"
    return solution[len(spanning):]


class DirectSumReport:
    """
    Outcome of direct_sum_check.

    Attributes
    ----------
    holds: bool
        True when span(ξ) ∩ L_ξ(fields of degree <= D) = 0
    rank_L: int
    rank_augmented: int
    degree: int
    domain_dim: int
    codomain_dim: int
    """

    def __init__(self, holds, rank_L, rank_augmented, degree, domain_dim, codomain_dim):
        self.holds = holds
        self.rank_L = rank_L
        self.rank_augmented = rank_augmented
        self.degree = degree
        self.domain_dim = domain_dim
        self.codomain_dim = codomain_dim

    def to_dict(self) -> dict:
        return {"holds": self.holds, "rank_L": self.rank_L, "rank_augmented": self.rank_augmented,
                "degree": self.degree, "domain_dim": self.domain_dim, "codomain_dim": self.codomain_dim}

    def __bool__(self):
        return bool(self.holds)


def lie_operator_on_fields(xi: VectorField,
                           degree: int,
                           extra_rows: list or None = None,
                           verbose: bool = False) -> OperatorMatrix:
    """
    Matrix of L_ξ from all monomial fields of degree <= degree into the span of
    every monomial its images (and extra_rows) touch, so nothing is truncated.
    """
    keys = field_monomials_upto(xi.n, degree)
    images = lie_images(xi, keys, verbose=verbose)
    rows = {k for image in images for k in image} | set(extra_rows or [])
    return OperatorMatrix.from_columns(images, keys, xi.field, row_labels=sorted(rows, key=field_key),
                                       domain=f"fields of degree <= {degree}",
                                       codomain="fields touched by L_ξ")


def direct_sum_check(xi: VectorField,
                     degree: int,
                     spectrum: Spectrum or None = None,
                     cert: PoincareCertificate or None = None,
                     verbose: bool = False) -> DirectSumReport:
    """
    Check span(ξ) ∩ L_ξ(fields of degree <= D) = 0 through
    rank([ξ | L_ξ]) = 1 + rank(L_ξ), in a codomain holding every monomial the
    images reach (degree <= D + C).

    Parameters
    ----------
    xi: VectorField
        Resonant field
    degree: int
        D
    spectrum: Spectrum, optional
    cert: PoincareCertificate, optional
    verbose: bool (default=False)

    Returns
    -------
    DirectSumReport

    Raises
    ------
    NonResonantFieldError
    """
    assert degree >= 0, "degree must be non-negative"
    spectrum = matching_spectrum(xi, spectrum)
    require_resonant(xi, spectrum)
    bound = resonance_bound(cert or poincare_check(spectrum), spectrum)
    operator = lie_operator_on_fields(xi, degree, extra_rows=xi.keys(), verbose=verbose)
    top = max((sum(m) for _, m in operator.row_labels), default=0)
    assert top <= degree + bound, "codomain exceeds degree D + C"
    xi_column = OperatorMatrix.from_columns([dict(xi.terms)], ["ξ"], xi.field, row_labels=operator.row_labels)
    rank_L = operator.rank()
    rank_augmented = operator.hstack(xi_column).rank()
    logger.info(f"direct sum check at degree {degree}: rank L = {rank_L}, rank [L | ξ] = {rank_augmented}")
    return DirectSumReport(rank_augmented == rank_L + 1, rank_L, rank_augmented, degree,
                           operator.shape[1], operator.shape[0])


def commuting_kernel(xi: VectorField,
                     degree: int,
                     spectrum: Spectrum or None = None,
                     verbose: bool = False) -> list:
    """
    Basis of the fields of degree <= D commuting with ξ, the kernel of L_ξ computed
    exactly on the uncompressed codomain.

    Parameters
    ----------
    xi: VectorField
        Resonant field
    degree: int
        D
    spectrum: Spectrum, optional
    verbose: bool (default=False)

    Returns
    -------
    list of VectorField

    Raises
    ------
    NonResonantFieldError
    """
    assert degree >= 0, "degree must be non-negative"
    spectrum = matching_spectrum(xi, spectrum)
    require_resonant(xi, spectrum)
    operator = lie_operator_on_fields(xi, degree, verbose=verbose)
    kernel = []
    for vector in operator.nullspace():
        terms = {k: c for k, c in zip(operator.col_labels, vector)}
        kernel.append(VectorField(xi.n, terms, field=xi.field))
    logger.info(f"commutant of ξ at degree {degree} has dimension {len(kernel)}")
    return kernel
