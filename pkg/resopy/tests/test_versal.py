from ..flow.versal import (versal_space, kodaira_spencer_class, direct_sum_check, commuting_kernel,
                           l_xi_matrix_on_g, require_resonant, lie_operator_on_fields)
from ..flow.resonance import Spectrum, resonant_basis, poincare_check
from ..data.vector_fields import VectorField, bracket
from ..data.errors import NonResonantFieldError, NotInPoincareDomainError
from .conftest import make_field, random_rational_spectrum
import numpy as np
import pytest


def test_l_xi_matrix(spectrum_12, xi_res_12):
    basis = resonant_basis(spectrum_12)
    operator = l_xi_matrix_on_g(xi_res_12, basis)
    assert operator.shape == (3, 3)
    assert np.allclose(operator.to_numpy(), [[0, 0, 0], [0, 0, 0], [-2, 1, 0]])
    assert l_xi_matrix_on_g(make_field([1, 2]), basis).rank() == 0


def test_require_resonant(spectrum_12):
    require_resonant(make_field([1, 2], {(1, (2, 0)): 5}), spectrum_12)
    with pytest.raises(NonResonantFieldError):
        require_resonant(make_field([1, 2], {(1, (1, 1)): 1}), spectrum_12)


@pytest.mark.parametrize("exact", [True, False])
def test_versal_diagonal(exact):
    result = versal_space(make_field([1, 2], exact=exact))
    assert result.dim_g == 3
    assert result.rank_V == 1
    assert result.dim_S == 2
    assert result.kernel_dim == 3
    assert [S.keys() for S in result.complement_basis] == [[(1, (0, 1))], [(1, (2, 0))]]


@pytest.mark.parametrize("exact", [True, False])
def test_versal_resonant(exact):
    xi = make_field([1, 2], {(1, (2, 0)): 1}, exact=exact)
    result = versal_space(xi)
    assert result.dim_g == 3
    assert result.rank_V == 2
    assert result.dim_S == 1
    assert result.kernel_dim == 2
    assert result.complement_basis[0].keys() == [(1, (0, 1))]
    member = result.unfold([3])
    assert member.equals(make_field([1, 5], {(1, (2, 0)): 1}, exact=exact))


@pytest.mark.parametrize("values,dim_g,dim_S", [([1, 1], 4, 3), ([1, 2, 3], 6, 5), ([1, 3], 3, 2)])
def test_versal_dimensions(values, dim_g, dim_S):
    result = versal_space(make_field(values))
    assert result.dim_g == dim_g
    assert result.dim_S == dim_S
    assert result.rank_V + result.dim_S == result.dim_g


def test_versal_orthogonal():
    result = versal_space(make_field([1, 2]), method="orthogonal")
    assert result.dim_S == 2
    xi = np.array([1, 2, 0])
    for S in result.complement_basis:
        coords = np.array([result.basis.field.to_complex(c) for c in result.basis.coordinates(S)])
        assert np.allclose(coords.conj() @ xi, 0)


def test_versal_to_dict(xi_res_12):
    out = versal_space(xi_res_12).to_dict()
    assert out["dim_g"] == 3
    assert out["dim_S"] == 1
    assert out["basis"] == [{"j": 1, "m": [1, 0]}, {"j": 2, "m": [0, 1]}, {"j": 2, "m": [2, 0]}]
    assert out["complement_basis"] == [[{"j": 2, "m": [0, 1], "a": [1, 0]}]]


def test_versal_errors():
    with pytest.raises(NonResonantFieldError):
        versal_space(make_field([1, 2], {(1, (1, 1)): 1}))
    with pytest.raises(NotInPoincareDomainError):
        versal_space(make_field([1, -1]))
    with pytest.raises(AssertionError):
        versal_space(make_field([1, 2]), method="random")


def test_kodaira_spencer_class(xi_res_12):
    result = versal_space(xi_res_12)
    f = result.basis.field
    assert kodaira_spencer_class(xi_res_12, VectorField.monomial(2, 1, (0, 1)), result) == [f.one]
    assert kodaira_spencer_class(xi_res_12, VectorField.monomial(2, 1, (2, 0)), result) == [f.zero]
    # z1∂1 = ξ - 2 z2∂2 - z1^2∂2 and z1^2∂2 = -[ξ, z1∂1]/2 lies in V
    assert kodaira_spencer_class(xi_res_12, VectorField.monomial(2, 0, (1, 0)), result) == [f.convert(-2)]
    # non-resonant directions are trivial
    X = VectorField.monomial(2, 0, (1, 0)) + VectorField.monomial(2, 1, (1, 1), 7)
    assert kodaira_spencer_class(xi_res_12, X, result) == [f.convert(-2)]
    with pytest.raises(ValueError):
        kodaira_spencer_class(make_field([1, 2]), X, result)


def test_direct_sum_check(xi0_12, xi_res_12):
    for xi in (xi0_12, xi_res_12):
        report = direct_sum_check(xi, 2)
        assert report
        assert report.rank_augmented == report.rank_L + 1
        assert report.domain_dim == 12
    out = direct_sum_check(xi_res_12, 1).to_dict()
    assert set(out) == {"holds", "rank_L", "rank_augmented", "degree", "domain_dim", "codomain_dim"}


def test_lie_operator_on_fields_codomain(xi_res_12):
    operator = lie_operator_on_fields(xi_res_12, 2)
    assert max(sum(m) for _, m in operator.row_labels) <= 3
    assert operator.shape[1] == 12


@pytest.mark.parametrize("xi,dim", [(make_field([1, 2]), 3), (make_field([1, 2], {(1, (2, 0)): 1}), 2)])
def test_commuting_kernel(xi, dim):
    kernel = commuting_kernel(xi, 2)
    assert len(kernel) == dim
    for K in kernel:
        assert bracket(xi, K).is_zero()


def test_commutant_of_linear_part_is_resonant_algebra(rng):
    # ker L_ξ0 on fields of degree <= C is exactly g_λ
    for n in [2] * 30 + [3] * 20:
        values = random_rational_spectrum(rng, n, re_max=3, den_max=1, im_max=1)
        spectrum = Spectrum(values)
        basis = resonant_basis(spectrum)
        kernel = commuting_kernel(make_field(values), poincare_check(spectrum).bound_C)
        assert len(kernel) == basis.dim, values
        assert {k for K in kernel for k in K.keys()} == set(basis.keys), values


RESONANT_SPECTRA = [[1, 2], [1, 3], [1, 1], [1, 2, 3], [1, 1, 2], [1, 2, 4]]


def _random_resonant_field(rng, values: list) -> VectorField:
    """ξ0 plus Gaussian integer coefficients on the non-linear resonant monomials"""
    basis = resonant_basis(Spectrum(values))
    terms = {(j, m): [int(rng.integers(-3, 4)), int(rng.integers(-3, 4))]
             for j, m in basis.keys if sum(m) >= 2 and rng.random() < 0.7}
    return make_field(values, terms)


def _random_field_sample(rng, count: int) -> list:
    out = []
    for i in range(count):
        if i % 2:
            values = random_rational_spectrum(rng, int(rng.integers(2, 4)), re_max=3, den_max=1, im_max=1)
        else:
            values = RESONANT_SPECTRA[int(rng.integers(len(RESONANT_SPECTRA)))]
        out.append(_random_resonant_field(rng, values))
    return out


def test_direct_sum_random_fields(rng):
    for xi in _random_field_sample(rng, 50):
        report = direct_sum_check(xi, 4)
        assert report, xi
        assert report.rank_augmented == report.rank_L + 1


@pytest.mark.parametrize("c", [2, "1/3", [0, 1], [1, -1]])
def test_versal_space_is_scale_invariant(c):
    for xi in (make_field([1, 2]), make_field([1, 2], {(1, (2, 0)): 1}), make_field([1, 2, 3])):
        base, scaled = versal_space(xi), versal_space(xi.scale(c))
        assert (scaled.dim_g, scaled.rank_V, scaled.dim_S) == (base.dim_g, base.rank_V, base.dim_S)
        assert [S.keys() for S in scaled.complement_basis] == [S.keys() for S in base.complement_basis]


def test_kodaira_spencer_class_vanishes_on_image(rng):
    for xi in _random_field_sample(rng, 20):
        result = versal_space(xi)
        zero = [result.basis.field.zero] * result.dim_S
        for _ in range(3):
            Y = result.basis.to_field([[int(rng.integers(-3, 4)), int(rng.integers(-3, 4))]
                                       for _ in range(result.dim_g)])
            assert kodaira_spencer_class(xi, bracket(xi, Y), result) == zero
            assert kodaira_spencer_class(xi, bracket(xi, Y) + xi.scale(5), result) == zero
