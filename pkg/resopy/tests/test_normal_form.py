from ..flow.normal_form import (homological_solve, poincare_dulac_normalize, rescale_exponent, rescale_factor,
                                rescale_coefficients, conjugacy_residual, residual_order, LOG_COLUMNS)
from ..flow.resonance import Spectrum, split_resonant, check_triangular, poincare_dulac_support
from ..data.vector_fields import VectorField, lie_derivative_field, field_monomials_upto
from ..data.errors import (ResonantTermError, SmallDivisorError, SmallDivisorWarning, NotInPoincareDomainError,
                           NonDiagonalLinearPartError, NonTriangularFieldError)
from .conftest import make_field
from fractions import Fraction
import numpy as np
import sympy
import pytest


def test_homological_solve(spectrum_12, xi0_12):
    Y = VectorField(2, {(1, (1, 1)): 1, (0, (0, 2)): 3})
    h = homological_solve(spectrum_12, Y, degree=2)
    assert h == VectorField(2, {(1, (1, 1)): 1, (0, (0, 2)): 1})
    assert lie_derivative_field(xi0_12, h) == Y


def test_homological_solve_errors(spectrum_12):
    with pytest.raises(ResonantTermError):
        homological_solve(spectrum_12, VectorField.monomial(2, 1, (2, 0)))
    with pytest.raises(ValueError):
        homological_solve(spectrum_12, VectorField(2, {(1, (1, 1)): 1, (0, (0, 3)): 1}), degree=2)


def test_small_divisors():
    spectrum = Spectrum([1., 2. + 1e-8])
    with pytest.raises(SmallDivisorError) as err:
        homological_solve(spectrum, VectorField(2, {(1, (2, 0)): 1.}))
    assert err.value.key == (1, (2, 0))
    spectrum = Spectrum([1., 2. + 1e-6])
    with pytest.warns(SmallDivisorWarning):
        h = homological_solve(spectrum, VectorField(2, {(1, (2, 0)): 1.}))
    assert abs(h.coefficient((1, (2, 0)))) == pytest.approx(1e6, rel=1e-6)


def test_normalize_removes_nonresonant_terms():
    X = make_field([1, 2], {(1, (1, 1)): 1})
    result = poincare_dulac_normalize(X, 3)
    assert result.normal_form == make_field([1, 2])
    assert not result.is_identity
    assert list(result.degree_log.columns) == LOG_COLUMNS
    first = result.degree_log.iloc[0]
    assert first.degree == 2
    assert first.j == 2
    assert first.m == (1, 1)
    assert first.abs_divisor == pytest.approx(1.)
    assert result.transform.near_identity


def test_normalize_keeps_resonant_terms(xi_res_12):
    X = xi_res_12 + VectorField.monomial(2, 0, (2, 0), "1/2")
    result = poincare_dulac_normalize(X, 4)
    resonant, nonresonant = split_resonant(result.normal_form, result.spectrum)
    assert nonresonant.is_zero()
    assert result.normal_form.truncate(2) == xi_res_12


def test_normal_form_is_fixed_point(xi_res_12):
    result = poincare_dulac_normalize(xi_res_12, 4)
    assert result.normal_form == xi_res_12
    assert result.is_identity
    assert result.degree_log.shape[0] == 0
    X = make_field([1, 2], {(1, (1, 1)): 1, (0, (2, 0)): 2, (1, (2, 0)): -1})
    first = poincare_dulac_normalize(X, 4)
    second = poincare_dulac_normalize(first.normal_form, 4)
    assert second.normal_form == first.normal_form
    assert second.is_identity


def test_normalize_three_dimensional():
    X = make_field([1, 2, 3], {(1, (2, 0, 0)): 1, (2, (1, 1, 0)): 2, (0, (1, 1, 0)): 1, (2, (0, 2, 0)): "1/2"})
    result = poincare_dulac_normalize(X, 3)
    spectrum = Spectrum([1, 2, 3])
    _, nonresonant = split_resonant(result.normal_form, spectrum)
    assert nonresonant.is_zero()
    check_triangular(result.normal_form, spectrum)


def test_normalize_float():
    X = make_field([1, 2], {(1, (1, 1)): 1, (0, (2, 0)): -2}, exact=False)
    result = poincare_dulac_normalize(X, 4)
    assert result.normal_form.equals(make_field([1, 2], exact=False))
    exact = poincare_dulac_normalize(make_field([1, 2], {(1, (1, 1)): 1, (0, (2, 0)): -2}), 4)
    assert result.transform.equals(exact.transform)


def test_normalize_errors():
    with pytest.raises(NotInPoincareDomainError):
        poincare_dulac_normalize(make_field([1, -1], {(0, (1, 1)): 1}), 3)
    with pytest.raises(NonDiagonalLinearPartError):
        poincare_dulac_normalize(make_field([1, 2], {(1, (1, 0)): 1}), 3)
    with pytest.raises(NonDiagonalLinearPartError):
        poincare_dulac_normalize(make_field([1, 2], {(0, (0, 0)): 1}), 3)


def test_conjugacy_residual_order():
    X = make_field([1, 2], {(1, (1, 1)): 1, (0, (2, 0)): 1})
    result = poincare_dulac_normalize(X, 3)
    points = 1e-2 * np.array([[1., 0.5j], [-0.3, 0.7]])
    assert conjugacy_residual(X, result, points).max() < 1e-6
    ratio, exponent = residual_order(X, result, 2e-2, 1e-2, samples=16)
    # truncation at N leaves a residual of order at least N + 1
    assert exponent > 3.5
    assert ratio > 2 ** 3.5


def test_to_dict():
    result = poincare_dulac_normalize(make_field([1, 2], {(1, (1, 1)): 1}), 2)
    out = result.to_dict()
    assert out["degree"] == 2
    assert out["normal_form"] == [{"j": 1, "m": [1, 0], "a": [1, 0]}, {"j": 2, "m": [0, 1], "a": [2, 0]}]
    assert out["removed_terms"] == 1
    assert out["transform"][1] == [{"m": [0, 1], "a": [1, 0]}, {"m": [1, 1], "a": [-1, 0]}]


@pytest.mark.parametrize("j,m,expected", [(1, (2, 0), Fraction(-3, 2)), (0, (1, 0), Fraction(0)),
                                          (2, (1, 1, 0), Fraction(-7, 6)), (1, (0, 1), Fraction(0))])
def test_rescale_exponent(j, m, expected):
    assert rescale_exponent(j, m) == expected


def test_rescale_coefficients_exact(xi_res_12):
    assert rescale_factor(4, 1, (2, 0)) == sympy.Rational(1, 8)
    scaled = rescale_coefficients(xi_res_12, 4)
    assert scaled == make_field([1, 2], {(1, (2, 0)): "1/8"})


def test_rescale_coefficients_irrational(xi_res_12):
    scaled = rescale_coefficients(xi_res_12, 2)
    assert not scaled.exact
    assert scaled.coefficient((1, (2, 0))) == pytest.approx(2 ** -1.5)
    assert scaled.coefficient((0, (1, 0))) == pytest.approx(1.)


def test_rescale_coefficients_errors(xi_res_12):
    with pytest.raises(AssertionError):
        rescale_coefficients(xi_res_12, 1)
    with pytest.raises(NonTriangularFieldError):
        rescale_coefficients(make_field([1, 2], {(1, (1, 1)): 1}), 4)


@pytest.mark.parametrize("values", [[1, 2], [1, 2, 3], [2, 3], [1, 3], [1, 1]])
def test_residual_order_random_perturbations(values, rng):
    spectrum = Spectrum(values)
    n = len(values)
    candidates = field_monomials_upto(n, 4, min_degree=2)
    quadratic = [(j, m) for j, m in field_monomials_upto(n, 2, min_degree=2)
                 if not spectrum.is_resonant(j, m)]
    for _ in range(5):
        picks = [candidates[int(i)] for i in rng.choice(len(candidates), size=4, replace=False)]
        picks.append(quadratic[int(rng.integers(len(quadratic)))])
        terms = {key: int(rng.choice([-4, -3, -2, -1, 1, 2, 3, 4])) / 4 for key in picks}
        X = make_field(values, terms, exact=False)
        result = poincare_dulac_normalize(X, 4)
        ratio, _ = residual_order(X, result, 1e-2, 5e-3, samples=16)
        assert ratio >= 2 ** 4.5, terms


def test_rescale_factor_below_one_on_support():
    A = sympy.Symbol("A", positive=True)
    for values in ([1, 2], [1, 2, 3], [1, 1, 2, 3], [1, 2, 3, 4], [1, 3, 5, 7]):
        support = poincare_dulac_support(Spectrum(values))
        for j, m in support.triangular + [key for key, _ in support.jordan_slots]:
            e = rescale_exponent(j, m)
            assert e < 0, (j, m)
            factor = A ** sympy.Rational(e.numerator, e.denominator)
            # decreasing in A and equal to 1 at A = 1, so below 1 for every A > 1
            assert sympy.simplify(sympy.diff(factor, A) * A / factor) == sympy.Rational(e.numerator,
                                                                                         e.denominator)
            assert factor.subs(A, 1) == 1
            assert rescale_factor(2, j, m) < 1
