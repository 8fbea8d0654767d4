#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Finite matrices of linear operators between spaces of monomial functions or
monomial vector fields. Rows and columns carry labels (the monomial keys of
the codomain and domain bases) so that a kernel vector or a solution can be
turned back into a function or a field.

In exact mode every rank, kernel and solve is an exact row reduction over the
Gaussian rationals (sympy DomainMatrix over QQ_I). In floating point mode the
rank is read from the singular values with tolerance 1e-10·σ_max, and a
RankAmbiguityWarning is raised when a singular value falls within three
orders of magnitude above that tolerance.

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from .errors import DimensionMismatchError, RankAmbiguityWarning, NonInvertibleLinearPartError
from .scalars import ScalarField
from sympy.polys.matrices import DomainMatrix
from sympy.polys.domains import QQ_I
from scipy import linalg
from warnings import warn
import pandas as pd
import numpy as np
import logging

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"

logger = logging.getLogger(__name__)

RANK_RTOL = 1e-10
AMBIGUITY_BAND = 1e3


def label_str(key) -> str:
    """
    Human readable label of a basis key: (j, m) is printed as 'z^(m)∂(j+1)'
    (1-based component) and an exponent m as 'z^(m)'.
    """
    if isinstance(key, tuple) and len(key) == 2 and isinstance(key[1], tuple):
        j, m = key
        return f"z^{m}∂{j + 1}"
    return f"z^{tuple(key)}"


def _from_domain_matrix(dm: DomainMatrix) -> list:
    matrix = dm.to_Matrix()
    return [[QQ_I.from_sympy(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


class OperatorMatrix:
    """
    Dense matrix of a linear operator with labelled rows and columns.

    Parameters
    ----------
    entries: list
        Nested list (rows x columns) of elements of the scalar field
    row_labels: list
        Codomain basis keys
    col_labels: list
        Domain basis keys
    field: ScalarField
    domain: str, optional
        Description of the domain space
    codomain: str, optional
        Description of the codomain space

    Raises
    ------
    DimensionMismatchError
        Entries do not match the label lists
    """

    def __init__(self,
                 entries: list,
                 row_labels: list,
                 col_labels: list,
                 field: ScalarField,
                 domain: str = "",
                 codomain: str = ""):
        if len(entries) != len(row_labels) or any(len(r) != len(col_labels) for r in entries):
            raise DimensionMismatchError("Matrix entries do not match the row and column labels")
        self.entries = [[field.convert(v) for v in row] for row in entries]
        self.row_labels = list(row_labels)
        self.col_labels = list(col_labels)
        self.field = field
        self.domain = domain
        self.codomain = codomain
        self._rank = None
        self._rref = None

    @classmethod
    def from_columns(cls,
                     columns: list,
                     col_labels: list,
                     field: ScalarField,
                     row_labels: list or None = None,
                     **kwargs):
        """
        Build a matrix from the images of the domain basis, each given as a
        dictionary mapping codomain keys to coefficients (e.g. the terms of a
        VectorField). When row_labels is omitted the codomain basis is every
        key that appears, in the order first met after sorting by sort_key.

        Parameters
        ----------
        columns: list of dict
        col_labels: list
        field: ScalarField
        row_labels: list, optional
        kwargs:
            passed to OperatorMatrix (domain, codomain, sort_key)

        Returns
        -------
        OperatorMatrix

        Raises
        ------
        DimensionMismatchError
            A column has a key outside the given row labels
        """
        sort_key = kwargs.pop("sort_key", None)
        if row_labels is None:
            keys = {k for col in columns for k in col}
            row_labels = sorted(keys, key=sort_key) if sort_key else sorted(keys)
        index = {k: i for i, k in enumerate(row_labels)}
        entries = [[field.zero] * len(columns) for _ in row_labels]
        for c, col in enumerate(columns):
            for key, value in col.items():
                if key not in index:
                    raise DimensionMismatchError(f"Column {c} has a component on {label_str(key)} "
                                                 f"outside the codomain basis")
                entries[index[key]][c] = value
        return cls(entries, row_labels, col_labels, field, **kwargs)

    @property
    def shape(self) -> tuple:
        return len(self.row_labels), len(self.col_labels)

    @property
    def exact(self) -> bool:
        return self.field.exact

    def column(self, c: int) -> dict:
        return {self.row_labels[i]: row[c] for i, row in enumerate(self.entries) if row[c]}

    def to_numpy(self) -> np.ndarray:
        rows, cols = self.shape
        out = np.zeros((rows, cols), dtype=complex)
        for i, row in enumerate(self.entries):
            for j, v in enumerate(row):
                out[i, j] = self.field.to_complex(v)
        return out

    def to_domain_matrix(self) -> DomainMatrix:
        assert self.exact, "DomainMatrix export requires exact mode"
        return DomainMatrix(self.entries, self.shape, QQ_I)

    def to_dataframe(self) -> pd.DataFrame:
        """Matrix as a DataFrame of complex entries indexed by readable labels"""
        return pd.DataFrame(self.to_numpy(),
                            index=[label_str(k) for k in self.row_labels],
                            columns=[label_str(k) for k in self.col_labels])

    def hstack(self, other: "OperatorMatrix") -> "OperatorMatrix":
        """Columns of self followed by the columns of other (same row basis)"""
        if other.row_labels != self.row_labels:
            raise DimensionMismatchError("Cannot stack matrices with different row bases")
        self.field.check_compatible(other.field)
        entries = [a + b for a, b in zip(self.entries, other.entries)]
        return OperatorMatrix(entries, self.row_labels, self.col_labels + other.col_labels, self.field,
                              domain=self.domain, codomain=self.codomain)

    def conjugate_transpose(self) -> "OperatorMatrix":
        entries = [[self.field.conjugate(self.entries[i][j]) for i in range(self.shape[0])]
                   for j in range(self.shape[1])]
        return OperatorMatrix(entries, self.col_labels, self.row_labels, self.field,
                              domain=self.codomain, codomain=self.domain)

    def singular_values(self) -> np.ndarray:
        if 0 in self.shape:
            return np.zeros(0)
        return linalg.svdvals(self.to_numpy())

    def _float_rank(self, values: np.ndarray) -> int:
        if values.size == 0 or values[0] == 0:
            return 0
        tau = RANK_RTOL * values[0]
        ambiguous = values[(values >= tau) & (values <= AMBIGUITY_BAND * tau)]
        if ambiguous.size:
            warn(f"Singular values {ambiguous.tolist()} lie within {AMBIGUITY_BAND:g}x of the rank "
                 f"tolerance {tau:.3e}; the numerical rank is ambiguous", RankAmbiguityWarning)
        return int(np.sum(values > tau))

    def rref(self) -> tuple:
        """
        Exact reduced row echelon form and pivot columns (exact mode only).

        Returns
        -------
        list, tuple
            Nested list of QQ_I elements and the pivot column indices
        """
        assert self.exact, "rref is only available in exact mode"
        if self._rref is None:
            rows, cols = self.shape
            if rows == 0 or cols == 0:
                self._rref = ([list(r) for r in self.entries], ())
            else:
                reduced, pivots = self.to_domain_matrix().rref()
                self._rref = (_from_domain_matrix(reduced), tuple(pivots))
        return self._rref

    def rank(self) -> int:
        """
        Rank of the matrix: exact row reduction (exact mode) or count of singular
        values above 1e-10·σ_max (float mode).

        Returns
        -------
        int

        Warns
        -----
        RankAmbiguityWarning
            Float mode with a singular value close to the tolerance
        """
        if self._rank is None:
            if self.exact:
                self._rank = len(self.rref()[1])
            else:
                self._rank = self._float_rank(self.singular_values())
            logger.debug(f"rank {self._rank} for {self.shape[0]}x{self.shape[1]} operator "
                         f"{self.domain} -> {self.codomain}")
        return self._rank

    def pivot_columns(self) -> list:
        """
        Indices of a maximal set of linearly independent columns, chosen greedily
        from the left in exact mode and by column pivoted QR in float mode.
        """
        if self.exact:
            return list(self.rref()[1])
        if 0 in self.shape:
            return []
        r = self.rank()
        _, _, perm = linalg.qr(self.to_numpy(), pivoting=True, mode="economic")
        return sorted(int(i) for i in perm[:r])

    def nullspace(self) -> list:
        """
        Basis of the kernel, each vector a list of field elements indexed like the
        columns. Exact mode: one vector per free column of the reduced echelon form,
        with a 1 in that column. Float mode: orthonormal basis from the SVD.

        Returns
        -------
        list of list
        """
        rows, cols = self.shape
        if cols == 0:
            return []
        if self.exact:
            if rows == 0:
                return [[self.field.one if i == c else self.field.zero for i in range(cols)]
                        for c in range(cols)]
            reduced, pivots = self.rref()
            free = [c for c in range(cols) if c not in pivots]
            basis = []
            for f in free:
                vec = [self.field.zero] * cols
                vec[f] = self.field.one
                for r, p in enumerate(pivots):
                    vec[p] = -reduced[r][f]
                basis.append(vec)
            return basis
        if rows == 0:
            return [list(v) for v in np.eye(cols, dtype=complex)]
        self.rank()
        kernel = linalg.null_space(self.to_numpy(), rcond=RANK_RTOL)
        return [[complex(x) for x in kernel[:, k]] for k in range(kernel.shape[1])]

    def kernel_dim(self) -> int:
        return self.shape[1] - self.rank()

    def is_injective(self) -> bool:
        return self.rank() == self.shape[1]

    def is_square_bijective(self) -> bool:
        return self.shape[0] == self.shape[1] and self.rank() == self.shape[1]

    def _vector(self, target: dict) -> list:
        index = {k: i for i, k in enumerate(self.row_labels)}
        vec = [self.field.zero] * self.shape[0]
        for key, value in target.items():
            if key not in index:
                return None
            vec[index[key]] = self.field.convert(value)
        return vec

    def augmented_rank(self, target: dict) -> int:
        """
        Rank of the matrix with the column target (a dict over the row labels)
        appended. Keys outside the row basis make the target unreachable, which
        is reported as rank + 1.
        """
        vec = self._vector(target)
        if vec is None:
            return self.rank() + 1
        extra = OperatorMatrix([[v] for v in vec], self.row_labels, ["target"], self.field)
        return self.hstack(extra).rank()

    def in_image(self, target: dict) -> bool:
        return self.augmented_rank(target) == self.rank()

    def solve(self, target: dict) -> list or None:
        """
        One solution x of A·x = target, or None when the target is not in the image.
        Exact mode returns the solution with zeros on the free columns; float mode
        returns the least squares solution when the residual is below 1e-8 relative
        to the target.

        Parameters
        ----------
        target: dict
            Mapping of row labels to coefficients

        Returns
        -------
        list or None
        """
        rows, cols = self.shape
        vec = self._vector(target)
        if vec is None:
            return None
        if cols == 0:
            return [] if all(not self.field.to_complex(v) for v in vec) else None
        if self.exact:
            augmented = OperatorMatrix([row + [v] for row, v in zip(self.entries, vec)],
                                       self.row_labels, self.col_labels + ["target"], self.field)
            reduced, pivots = augmented.rref()
            if cols in pivots:
                return None
            x = [self.field.zero] * cols
            for r, p in enumerate(pivots):
                x[p] = reduced[r][cols]
            return x
        b = np.array([self.field.to_complex(v) for v in vec])
        a = self.to_numpy()
        x, *_ = linalg.lstsq(a, b)
        if np.linalg.norm(a @ x - b) > 1e-8 * max(np.linalg.norm(b), 1.):
            return None
        return [complex(v) for v in x]

    def inverse(self) -> "OperatorMatrix":
        """
        Inverse of a square matrix.

        Raises
        ------
        NonInvertibleLinearPartError
            Matrix is not square or is singular
        """
        rows, cols = self.shape
        if rows != cols or self.rank() < cols:
            raise NonInvertibleLinearPartError("Linear part is not invertible")
        if self.exact:
            entries = _from_domain_matrix(self.to_domain_matrix().inv())
        else:
            entries = [[complex(v) for v in row] for row in np.linalg.inv(self.to_numpy())]
        return OperatorMatrix(entries, self.col_labels, self.row_labels, self.field,
                              domain=self.codomain, codomain=self.domain)

    def apply(self, vector: list) -> list:
        """Matrix-vector product"""
        out = []
        for row in self.entries:
            acc = self.field.zero
            for a, v in zip(row, vector):
                acc = acc + a * v
            out.append(acc)
        return out


def complement_coordinates(op: OperatorMatrix,
                           prefer_last: bool = False) -> list:
    """
    Greedy choice of coordinate directions (row indices) completing the column
    span of op to the whole codomain: a row index i is taken when the unit
    vector e_i is independent of the columns and of the directions already taken.

    Parameters
    ----------
    op: OperatorMatrix
    prefer_last: bool (default=False)
        Scan the rows from the last to the first

    Returns
    -------
    list of int
        Sorted row indices
    """
    rows, ncols = op.shape
    order = list(reversed(range(rows))) if prefer_last else list(range(rows))

    def unit_columns(indices):
        return OperatorMatrix([[op.field.one if r == i else op.field.zero for i in indices]
                               for r in range(rows)],
                              op.row_labels, [("unit", i) for i in indices], op.field)

    if op.exact:
        stacked = op.hstack(unit_columns(order))
        return sorted(order[p - ncols] for p in stacked.pivot_columns() if p >= ncols)
    chosen = []
    current = op
    rank = op.rank()
    for i in order:
        if rank == rows:
            break
        candidate = current.hstack(unit_columns([i]))
        if candidate.rank() > rank:
            chosen.append(i)
            current = candidate
            rank += 1
    return sorted(chosen)


def orthogonal_complement(op: OperatorMatrix) -> list:
    """
    Basis of the hermitian orthogonal complement of the column span of op,
    i.e. the kernel of its conjugate transpose.
    """
    return op.conjugate_transpose().nullspace()
