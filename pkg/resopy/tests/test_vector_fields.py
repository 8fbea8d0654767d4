from ..data.vector_fields import (PolyFunction, VectorField, LaurentFunction, LaurentVectorField,
                                  multi_indices, multi_indices_upto, field_monomials_upto, monomial_key,
                                  bracket, lie_derivative_field, lie_derivative_function,
                                  multiply_functions, evaluate, require_polynomial_degree)
from ..data.scalars import ExactField, FloatField
from ..data.errors import (DimensionMismatchError, ModeMismatchError, LaurentBoxError,
                           TruncationError)
from .conftest import make_field
import numpy as np
import sympy
import pytest


def _random_field(rng, n, max_degree, n_terms, exact=True):
    keys = field_monomials_upto(n, max_degree, min_degree=1)
    picks = rng.choice(len(keys), size=n_terms, replace=False)
    field = ExactField() if exact else FloatField()
    terms = {}
    for i in picks:
        if exact:
            terms[keys[i]] = [int(rng.integers(-3, 4)), int(rng.integers(-3, 4))]
        else:
            terms[keys[i]] = complex(rng.normal(), rng.normal())
    return VectorField(n, terms, field=field)


def _sympy_bracket(X, Y, symbols):
    x, y = X.to_sympy(symbols), Y.to_sympy(symbols)
    jx, jy = x.jacobian(symbols), y.jacobian(symbols)
    return (jy * x - jx * y).applyfunc(sympy.expand)


def test_multi_indices_order():
    assert multi_indices(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert multi_indices(3, 2) == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    assert multi_indices(2, -1) == []
    assert len(multi_indices_upto(3, 3)) == 20
    assert field_monomials_upto(2, 1, min_degree=1) == [(0, (1, 0)), (0, (0, 1)), (1, (1, 0)), (1, (0, 1))]


def test_canonical_term_order():
    f = PolyFunction(2, {(0, 2): 1, (1, 0): 2, (2, 0): 3, (0, 0): 4})
    assert list(f.terms) == sorted(f.terms, key=monomial_key)
    assert list(f.terms)[0] == (0, 0)


def test_zero_coefficients_purged():
    X = VectorField(2, {(0, (1, 0)): 1, (1, (2, 0)): 0})
    assert X.keys() == [(0, (1, 0))]
    assert (X - X).is_zero()
    assert (X - X).degree == -1


def test_field_inference():
    assert VectorField(2, {(0, (1, 0)): "1/2"}).exact
    assert not VectorField(2, {(0, (1, 0)): 0.5}).exact


def test_invalid_keys():
    with pytest.raises(DimensionMismatchError):
        VectorField(2, {(2, (1, 0)): 1})
    with pytest.raises(DimensionMismatchError):
        VectorField(2, {(0, (1, 0, 0)): 1})
    with pytest.raises(ValueError):
        PolyFunction(2, {(-1, 0): 1})


def test_mode_mismatch():
    with pytest.raises(ModeMismatchError):
        make_field([1, 2]) + make_field([1, 2], exact=False)


def test_bracket_monomials():
    # [z1 ∂1, z1^2 ∂2] = 2 z1^2 ∂2
    X = VectorField.monomial(2, 0, (1, 0))
    Y = VectorField.monomial(2, 1, (2, 0))
    assert bracket(X, Y) == VectorField.monomial(2, 1, (2, 0), 2)
    assert bracket(Y, X) == VectorField.monomial(2, 1, (2, 0), -2)


def test_bracket_of_diagonal_field_with_monomial(spectrum_12, xi0_12):
    # L_ξ0 acts on z^m ∂_j by (m, λ) - λ_j
    for j, m in field_monomials_upto(2, 3):
        Y = VectorField.monomial(2, j, m)
        expected = Y.scale(spectrum_12.field.convert(spectrum_12.divisor(j, m)))
        assert lie_derivative_field(xi0_12, Y) == expected


@pytest.mark.parametrize("n,max_degree", [(2, 3), (3, 2)])
def test_bracket_against_sympy(rng, n, max_degree):
    symbols = sympy.symbols(f"z1:{n + 1}")
    for _ in range(10):
        X = _random_field(rng, n, max_degree, 4)
        Y = _random_field(rng, n, max_degree, 4)
        expected = _sympy_bracket(X, Y, symbols)
        assert (bracket(X, Y).to_sympy(symbols) - expected).applyfunc(sympy.expand) == sympy.zeros(n, 1)


def test_bracket_identities(rng):
    for _ in range(10):
        X, Y, Z = [_random_field(rng, 2, 2, 3) for _ in range(3)]
        assert bracket(X, Y) == -bracket(Y, X)
        jacobi = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
        assert jacobi.is_zero()


def test_lie_derivative_function_leibniz(rng):
    for _ in range(10):
        X = _random_field(rng, 2, 2, 3)
        f = PolyFunction(2, {(1, 0): int(rng.integers(1, 4)), (0, 2): 1})
        g = PolyFunction(2, {(1, 1): -2, (0, 1): int(rng.integers(1, 4))})
        lhs = lie_derivative_function(X, multiply_functions(f, g))
        rhs = lie_derivative_function(X, f) * g + f * lie_derivative_function(X, g)
        assert lhs == rhs


def test_lie_derivative_against_sympy(rng):
    symbols = sympy.symbols("z1:3")
    X = _random_field(rng, 2, 3, 5)
    f = PolyFunction(2, {(2, 1): 3, (0, 1): -1, (1, 0): "1/2"})
    vec = X.to_sympy(symbols)
    expr = f.to_sympy(symbols)
    expected = sympy.expand(sum(vec[k] * sympy.diff(expr, s) for k, s in enumerate(symbols)))
    assert sympy.expand(lie_derivative_function(X, f).to_sympy(symbols) - expected) == 0


def test_laurent_bracket_and_box():
    Y = LaurentVectorField(2, {(0, (-1, -1)): 1}, box=((-2, -2), (-1, -1)))
    assert Y.box == ((-2, -2), (-1, -1))
    image = bracket(make_field([1, 2]), Y)
    assert isinstance(image, LaurentVectorField)
    # (m, λ) - λ_1 = -3 - 1
    assert image == LaurentVectorField(2, {(0, (-1, -1)): -4})
    with pytest.raises(LaurentBoxError):
        LaurentFunction(2, {(-3, -1): 1}, box=((-2, -2), (-1, -1)))


def test_laurent_lie_derivative_function():
    f = LaurentFunction(2, {(-1, -2): 1})
    image = lie_derivative_function(make_field([1, 2]), f)
    assert image.coefficient((-1, -2)) == image.field.convert(-5)


def test_evaluate_against_finite_difference(rng):
    X = _random_field(rng, 2, 3, 6, exact=False)
    f = PolyFunction(2, {(3, 1): 1. + 1j, (0, 2): -2.})
    z = np.array([0.3 + 0.1j, -0.2 + 0.4j])
    h = 1e-6
    df = np.array([(f.evaluate(z + h * e) - f.evaluate(z - h * e)) / (2 * h) for e in np.eye(2)])
    expected = np.dot(X.evaluate(z), df)
    assert lie_derivative_function(X, f).evaluate(z) == pytest.approx(expected, rel=1e-6)


def test_evaluate_matches_sympy(rng):
    symbols = sympy.symbols("z1:3")
    X = _random_field(rng, 2, 3, 5)
    z = [0.5 - 0.25j, 1.5 + 0.5j]
    expected = np.array([complex(c.subs(dict(zip(symbols, z)))) for c in X.to_sympy(symbols)])
    assert np.allclose(evaluate(X, z), expected, rtol=1e-12)
    points = np.array([z, z])
    assert X.evaluate_many(points).shape == (2, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_evaluate_many_matches_power_sums(n, rng):
    exponents = multi_indices_upto(n, 6)
    picks = rng.choice(len(exponents), size=min(12, len(exponents)), replace=False)
    terms = {exponents[int(i)]: complex(*rng.normal(size=2)) for i in picks}
    f = PolyFunction(n, terms, field=FloatField())
    points = rng.normal(size=(20, n)) + 1j * rng.normal(size=(20, n))
    expected = np.array([sum(a * np.prod(z ** np.array(m)) for m, a in terms.items()) for z in points])
    assert np.allclose(f.evaluate_many(points), expected, rtol=1e-12, atol=1e-12)
    # the cached scheme is reused
    assert np.array_equal(f.evaluate_many(points), f.evaluate_many(points))


def test_evaluate_laurent_and_sparse_components():
    f = LaurentFunction(2, {(-2, 1): 3, (1, -1): -1, (0, 0): 2})
    z = np.array([0.5 - 0.25j, 2 + 1j])
    assert f.evaluate(z) == pytest.approx(3 * z[0] ** -2 * z[1] - z[0] / z[1] + 2)
    # only the second component carries terms
    X = VectorField(3, {(1, (4, 0, 1)): 2, (1, (0, 0, 0)): -1})
    w = np.array([1.5, -1j, 0.5])
    assert np.allclose(X.evaluate(w), [0, 2 * 1.5 ** 4 * 0.5 - 1, 0])


def test_evaluate_dimension_mismatch(xi0_12):
    with pytest.raises(DimensionMismatchError):
        evaluate(xi0_12, [1., 2., 3.])


def test_linear_part_and_parts(xi_res_12):
    linear = xi_res_12.linear_part()
    assert linear[0][0] == xi_res_12.field.convert(1)
    assert linear[1][1] == xi_res_12.field.convert(2)
    assert not linear[0][1]
    assert xi_res_12.homogeneous_part(2).keys() == [(1, (2, 0))]
    assert xi_res_12.truncate(1) == make_field([1, 2])
    assert xi_res_12.degree == 2
    assert xi_res_12.low_degree == 1


def test_equals_tolerance():
    X = make_field([1, 2], exact=False)
    Y = VectorField(2, {(0, (1, 0)): 1 + 1e-12, (1, (0, 1)): 2.}, field=FloatField())
    assert X.equals(Y)
    assert not X.equals(Y, tol=1e-14)
    assert make_field([1, 2]).equals(make_field([1, 2], exact=False))


def test_require_polynomial_degree(xi_res_12):
    require_polynomial_degree(xi_res_12, 2)
    with pytest.raises(TruncationError):
        require_polynomial_degree(xi_res_12, 1)


def test_describe(xi_res_12):
    assert "∂2" in xi_res_12.describe()
    assert VectorField(2, {}, field=ExactField()).describe() == "0"
