from ..data.linalg import OperatorMatrix, complement_coordinates, orthogonal_complement, label_str
from ..data.scalars import ExactField, FloatField
from ..data.errors import NonInvertibleLinearPartError, RankAmbiguityWarning, DimensionMismatchError
import numpy as np
import pytest


def _matrix(rows, exact=True):
    field = ExactField() if exact else FloatField()
    return OperatorMatrix(rows, list(range(len(rows))), list(range(len(rows[0]))), field)


@pytest.mark.parametrize("exact", [True, False])
def test_rank_and_nullspace(exact):
    m = _matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]], exact=exact)
    assert m.rank() == 2
    assert m.kernel_dim() == 1
    assert not m.is_injective()
    kernel = m.nullspace()
    assert len(kernel) == 1
    product = np.array(m.to_numpy()) @ np.array([m.field.to_complex(v) for v in kernel[0]])
    assert np.allclose(product, 0)


def test_exact_nullspace_free_column():
    m = _matrix([[1, 0, 2], [0, 1, 3]])
    kernel = m.nullspace()
    f = m.field
    assert kernel == [[f.convert(-2), f.convert(-3), f.one]]
    assert m.pivot_columns() == [0, 1]


def test_gaussian_rational_entries():
    m = _matrix([[[1, 1], [0, 1]], [[0, 2], [-1, 1]]])
    # second row is (1+i) times the first
    assert m.rank() == 1


def test_solve_exact():
    m = _matrix([[1, 1], [0, 2], [0, 0]])
    f = m.field
    assert m.solve({0: 3, 1: 4}) == [f.convert(1), f.convert(2)]
    assert m.solve({2: 1}) is None
    assert m.solve({"elsewhere": 1}) is None
    assert m.in_image({0: 1})
    assert not m.in_image({2: 1})
    assert m.augmented_rank({2: 1}) == 3


def test_solve_float():
    m = _matrix([[1., 1.], [0., 2.], [0., 0.]], exact=False)
    x = m.solve({0: 3., 1: 4.})
    assert np.allclose(x, [1., 2.])
    assert m.solve({2: 1.}) is None


@pytest.mark.parametrize("exact", [True, False])
def test_inverse(exact):
    m = _matrix([[2, 1], [1, 1]], exact=exact)
    inverse = m.inverse()
    assert np.allclose(inverse.to_numpy(), [[1, -1], [-1, 2]])
    with pytest.raises(NonInvertibleLinearPartError):
        _matrix([[1, 2], [2, 4]], exact=exact).inverse()
    with pytest.raises(NonInvertibleLinearPartError):
        _matrix([[1, 2, 3], [0, 1, 1]], exact=exact).inverse()


def test_rank_ambiguity_warning():
    m = _matrix([[1., 0.], [0., 1e-8]], exact=False)
    with pytest.warns(RankAmbiguityWarning):
        assert m.rank() == 2


def test_from_columns_and_labels():
    columns = [{"a": 1}, {"b": 2, "a": 1}]
    m = OperatorMatrix.from_columns(columns, ["x", "y"], ExactField())
    assert m.row_labels == ["a", "b"]
    assert m.shape == (2, 2)
    assert m.column(1) == {"a": m.field.one, "b": m.field.convert(2)}
    with pytest.raises(DimensionMismatchError):
        OperatorMatrix.from_columns(columns, ["x", "y"], ExactField(), row_labels=["a"])
    frame = m.to_dataframe()
    assert frame.shape == (2, 2)


def test_label_str():
    assert label_str((1, (2, 0))) == "z^(2, 0)∂2"
    assert label_str((-1, -2)) == "z^(-1, -2)"


@pytest.mark.parametrize("prefer_last,expected", [(False, [0]), (True, [1])])
def test_complement_coordinates(prefer_last, expected):
    # column span is the line through (1, 1)
    for exact in (True, False):
        m = _matrix([[1], [1]], exact=exact)
        assert complement_coordinates(m, prefer_last=prefer_last) == expected


def test_orthogonal_complement():
    m = _matrix([[1], [1]], exact=True)
    basis = orthogonal_complement(m)
    assert len(basis) == 1
    v = np.array([m.field.to_complex(x) for x in basis[0]])
    assert np.allclose(v.conj() @ np.array([1, 1]), 0)


def test_conjugate_transpose():
    m = _matrix([[[1, 2], 0]])
    ct = m.conjugate_transpose()
    assert ct.shape == (2, 1)
    assert ct.entries[0][0] == m.field.convert([1, -2])


def test_empty_matrix():
    m = OperatorMatrix([], [], ["x"], ExactField())
    assert m.rank() == 0
    assert m.nullspace() == [[m.field.one]]
