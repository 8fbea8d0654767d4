from ..data.scalars import ExactField, FloatField
from ..data.vector_fields import VectorField, unit
from ..flow.resonance import Spectrum
import numpy as np
import pytest
import os

ASSETS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "assets")


def asset(name: str) -> str:
    """
    Path of a file in the test assets directory

    Parameters
    ----------
    name: str

    Returns
    -------
    str
    """
    return os.path.join(ASSETS, name)


def make_field(lambdas: list,
               terms: dict or None = None,
               exact: bool = True) -> VectorField:
    """
    Build ξ0 + Σ a z^m ∂_j from eigenvalues and a dictionary of 0-based (j, m) keys.

    Parameters
    ----------
    lambdas: list
    terms: dict, optional
    exact: bool (default=True)

    Returns
    -------
    VectorField
    """
    n = len(lambdas)
    field = ExactField() if exact else FloatField()
    out = {(j, unit(n, j)): v for j, v in enumerate(lambdas)}
    for key, a in (terms or {}).items():
        out[key] = a
    return VectorField(n, out, field=field)


def random_rational_spectrum(rng: np.random.Generator,
                             n: int,
                             re_max: int = 6,
                             den_max: int = 3,
                             im_max: int = 3) -> list:
    """
    Gaussian rational eigenvalues with positive real parts, hence in the Poincaré domain

    Parameters
    ----------
    rng: numpy.random.Generator
    n: int
    re_max: int (default=6)
        Numerators of real parts are drawn from 1..re_max
    den_max: int (default=3)
        Denominators are drawn from 1..den_max
    im_max: int (default=3)
        Numerators of imaginary parts are drawn from -im_max..im_max

    Returns
    -------
    list of [str, str]
    """
    out = []
    for _ in range(n):
        re = f"{int(rng.integers(1, re_max + 1))}/{int(rng.integers(1, den_max + 1))}"
        im = f"{int(rng.integers(-im_max, im_max + 1))}/{int(rng.integers(1, den_max + 1))}"
        out.append([re, im])
    return out


@pytest.fixture
def spectrum_12():
    return Spectrum([1, 2])


@pytest.fixture
def xi0_12():
    return make_field([1, 2])


@pytest.fixture
def xi_res_12():
    """ξ0 + z1^2 ∂2 for λ = (1, 2)"""
    return make_field([1, 2], {(1, (2, 0)): 1})


@pytest.fixture
def rng():
    return np.random.default_rng(42)
