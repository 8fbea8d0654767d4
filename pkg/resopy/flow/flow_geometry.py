#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Flows and spheres. A field ξ0 + (triangular resonant terms) integrates in
closed form: with z_k(t) = e^{λ_k t} P_k(t) every resonant monomial z^l on the
right hand side of ż_j carries the factor e^{(l,λ)t} = e^{λ_j t}, so the P_j
are polynomials in t obtained one component after the other by integration.
A classical Runge-Kutta integrator in complex time is provided as an
independent check.

The second half of the module scans spheres for the transversality criterion
Σ ξ_j(z)·conj(z_j) ≠ 0 and annuli for zeros of perturbed fields. Scans are
diagnostics: they can find a violation, never prove its absence.

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from ..data.vector_fields import VectorField, unit
from ..data.errors import DimensionMismatchError
from ..feedback import progress_bar
from .resonance import Spectrum, PoincareCertificate, check_triangular
from numpy.polynomial import Polynomial
from scipy.stats import qmc, norm
import pandas as pd
import numpy as np
import logging

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"

logger = logging.getLogger(__name__)


class FlowSolution:
    """
    Closed form flow z_j(t) = e^{λ_j t}·P_j(t) of a triangular resonant field
    from a fixed initial point.

    Attributes
    ----------
    xi: VectorField
    z0: numpy.ndarray
    lambdas: numpy.ndarray
    polynomials: list of numpy.polynomial.Polynomial
        P_j with complex coefficients; P_j(0) = z_j(0)
    """

    def __init__(self, xi: VectorField, z0: np.ndarray, lambdas: np.ndarray, polynomials: list):
        self.xi = xi
        self.z0 = z0
        self.lambdas = lambdas
        self.polynomials = polynomials

    @property
    def degrees(self) -> list:
        return [_degree(p) for p in self.polynomials]

    def evaluate(self, t: complex) -> np.ndarray:
        t = complex(t)
        return np.array([np.exp(lam * t) * p(t) for lam, p in zip(self.lambdas, self.polynomials)])

    def evaluate_many(self, times) -> np.ndarray:
        times = np.asarray(times, dtype=complex)
        return np.stack([np.exp(lam * times) * p(times) for lam, p in zip(self.lambdas, self.polynomials)],
                        axis=-1)

    def derivative_at_zero(self) -> np.ndarray:
        """d/dt z(t) at t = 0, which equals ξ(z0)"""
        return np.array([lam * p(0) + p.deriv()(0) for lam, p in zip(self.lambdas, self.polynomials)])

    def flow_from(self, t: complex, s: complex) -> np.ndarray:
        """The point reached by flowing for time t from z(s); equals z(t + s)"""
        return closed_form_flow(self.xi, self.evaluate(s)).evaluate(t)

    def to_dict(self) -> dict:
        return {"z0": [[float(z.real), float(z.imag)] for z in self.z0],
                "components": [{"j": j + 1,
                                "lambda": [float(lam.real), float(lam.imag)],
                                "polynomial": [[float(c.real), float(c.imag)] for c in p.coef]}
                               for j, (lam, p) in enumerate(zip(self.lambdas, self.polynomials))]}

    def __repr__(self):
        return f"FlowSolution(degrees={self.degrees})"


def _degree(p: Polynomial) -> int:
    coef = np.trim_zeros(np.asarray(p.coef), "b")
    return max(len(coef) - 1, 0)


def closed_form_flow(xi: VectorField,
                     z0,
                     spectrum: Spectrum or None = None,
                     cert: PoincareCertificate or None = None) -> FlowSolution:
    """
    Closed form flow of a field supported on the triangular Poincaré–Dulac
    support. Component j solves P_j' = Σ a·Π_k P_k^{l_k} over the non-diagonal
    terms a·z^l ∂_j, P_j(0) = z_j(0); since l only involves components k < j the
    recursion runs in order j = 1, ..., n.

    Parameters
    ----------
    xi: VectorField
    z0: array-like
        Initial point in C^n
    spectrum: Spectrum, optional
        Read from the diagonal of ξ when omitted
    cert: PoincareCertificate, optional

    Returns
    -------
    FlowSolution

    Raises
    ------
    NonTriangularFieldError
        ξ is not triangular resonant
    DimensionMismatchError
        z0 does not have n coordinates
    """
    z0 = np.asarray(z0, dtype=complex)
    if z0.shape != (xi.n,):
        raise DimensionMismatchError(f"Initial point of shape {z0.shape} for a field on C^{xi.n}")
    spectrum = spectrum or Spectrum.from_diagonal(xi)
    if any(m != unit(xi.n, j) for j, m in xi.terms):
        check_triangular(xi, spectrum, cert=cert)
    lambdas = spectrum.as_complex()
    polynomials = []
    for j in range(xi.n):
        rhs = Polynomial([0j])
        for (k, l), a in xi.terms.items():
            if k != j or l == unit(xi.n, j):
                continue
            term = Polynomial([xi.field.to_complex(a)])
            for i, e in enumerate(l):
                if e:
                    term = term * polynomials[i] ** e
            rhs = rhs + term
        polynomials.append(rhs.integ(lbnd=0, k=z0[j]))
    return FlowSolution(xi, z0, lambdas, polynomials)


def numeric_flow(xi: VectorField,
                 z0,
                 t: complex,
                 steps: int = 1000) -> np.ndarray:
    """
    Classical fourth order Runge-Kutta integration of ż = ξ(z) along the straight
    segment from 0 to t in complex time.

    Parameters
    ----------
    xi: VectorField
    z0: array-like
        A point of C^n, or a (P, n) array of initial points integrated together
    t: complex
    steps: int (default=1000)

    Returns
    -------
    numpy.ndarray
        Same shape as z0

    Raises
    ------
    AssertionError
        steps < 1
    """
    assert steps >= 1, "steps must be at least 1"
    z = np.asarray(z0, dtype=complex).copy()
    single = z.ndim == 1
    z = np.atleast_2d(z)
    h = complex(t) / steps
    if h != 0:
        for _ in range(steps):
            k1 = xi.evaluate_many(z)
            k2 = xi.evaluate_many(z + 0.5 * h * k1)
            k3 = xi.evaluate_many(z + 0.5 * h * k2)
            k4 = xi.evaluate_many(z + h * k3)
            z = z + (h / 6.) * (k1 + 2 * k2 + 2 * k3 + k4)
    return z[0] if single else z


def sphere_points(n: int,
                  samples: int,
                  radius: float = 1.,
                  seed: int = 0) -> np.ndarray:
    """
    Deterministic points on the sphere of the given radius in C^n: a scrambled
    Halton sequence in [0, 1)^{2n} pushed through the normal quantile function
    and normalised, followed by the 2n points radius·e_k and radius·i·e_k.

    Parameters
    ----------
    n: int
    samples: int
        Number of quasi-random points (the coordinate points are added on top)
    radius: float (default=1.)
    seed: int (default=0)

    Returns
    -------
    numpy.ndarray
        Complex array of shape (samples + 2n, n)
    """
    assert radius > 0, "radius must be positive"
    assert samples >= 0, "samples must be non-negative"
    coordinate = np.concatenate([np.eye(n), 1j * np.eye(n)]).astype(complex)
    if samples == 0:
        return radius * coordinate
    u = qmc.Halton(d=2 * n, scramble=True, seed=seed).random(samples)
    x = norm.ppf(np.clip(u, 1e-12, 1 - 1e-12))
    z = x[:, :n] + 1j * x[:, n:]
    z = z / np.linalg.norm(z, axis=1, keepdims=True)
    return radius * np.concatenate([z, coordinate])


class TransversalityReport:
    """
    Sphere scan of the pairing ⟨ξ(z), z⟩ = Σ ξ_j(z)·conj(z_j).

    Attributes
    ----------
    radius: float
    samples: int
        Number of points evaluated
    seed: int
    min_pairing: float
        Minimum of |⟨ξ(z), z⟩|
    min_margin: float
        Minimum of |⟨ξ(z), z⟩| / (‖ξ(z)‖·‖z‖), 0 where ξ vanishes
    worst_point: numpy.ndarray
        Sample attaining min_margin
    threshold: float
    violation: bool
        True when min_margin <= threshold
    """

    def __init__(self, radius, samples, seed, min_pairing, min_margin, worst_point, threshold):
        self.radius = radius
        self.samples = samples
        self.seed = seed
        self.min_pairing = min_pairing
        self.min_margin = min_margin
        self.worst_point = worst_point
        self.threshold = threshold

    @property
    def violation(self) -> bool:
        return self.min_margin <= self.threshold

    @property
    def message(self) -> str:
        if self.violation:
            return (f"violation found: normalised margin {self.min_margin:.3e} <= {self.threshold:g} "
                    f"at radius {self.radius:g}")
        return f"no violation found at {self.samples} samples"

    def to_dict(self) -> dict:
        return {"radius": float(self.radius),
                "samples": int(self.samples),
                "seed": self.seed,
                "min_pairing": float(self.min_pairing),
                "min_margin": float(self.min_margin),
                "worst_point": [[float(z.real), float(z.imag)] for z in self.worst_point],
                "threshold": float(self.threshold),
                "violation": bool(self.violation),
                "message": self.message}

    def __repr__(self):
        return f"TransversalityReport(radius={self.radius}, min_margin={self.min_margin:.3e})"


def _pairing_margins(F: np.ndarray, Z: np.ndarray) -> tuple:
    pairing = np.abs(np.sum(F * np.conj(Z), axis=1))
    scale = np.linalg.norm(F, axis=1) * np.linalg.norm(Z, axis=1)
    margin = np.divide(pairing, scale, out=np.zeros_like(pairing), where=scale > 0)
    return pairing, margin


def transversality_scan(xi: VectorField,
                        radius: float = 1.,
                        samples: int = 1000,
                        seed: int = 0,
                        threshold: float = 1e-2) -> TransversalityReport:
    """
    Sample the sphere of the given radius and record the smallest pairing
    |⟨ξ(z), z⟩| and normalised margin.

    Parameters
    ----------
    xi: VectorField
    radius: float (default=1.)
    samples: int (default=1000)
    seed: int (default=0)
    threshold: float (default=1e-2)
        Normalised margins at or below this value count as a violation

    Returns
    -------
    TransversalityReport

    Raises
    ------
    AssertionError
        radius is not positive
    """
    Z = sphere_points(xi.n, samples, radius=radius, seed=seed)
    pairing, margin = _pairing_margins(xi.evaluate_many(Z), Z)
    worst = int(np.argmin(margin))
    report = TransversalityReport(radius, Z.shape[0], seed, float(pairing.min()), float(margin[worst]),
                                  Z[worst], threshold)
    logger.info(f"sphere scan r={radius:g}: {report.message}")
    return report


class PerturbationReport:
    """
    Annulus scan of a perturbed field ξ + X.

    Attributes
    ----------
    shells: Pandas.DataFrame
        One row per sampled sphere: radius, min_norm, min_relative_norm
        (min ‖(ξ+X)(z)‖/‖z‖), min_pairing, min_margin
    pairings: dict
        TransversalityReport of ξ + X at r_inner, 1 and r_outer
    threshold: float
    """

    def __init__(self, shells: pd.DataFrame, pairings: dict, threshold: float):
        self.shells = shells
        self.pairings = pairings
        self.threshold = threshold

    @property
    def min_relative_norm(self) -> float:
        return float(self.shells["min_relative_norm"].min())

    @property
    def vanishing(self) -> bool:
        """True when the perturbed field (nearly) vanishes at some sample"""
        return self.min_relative_norm <= self.threshold

    @property
    def violation(self) -> bool:
        return self.vanishing or any(r.violation for r in self.pairings.values())

    @property
    def message(self) -> str:
        if self.vanishing:
            return f"vanishing detected: min ‖(ξ+X)(z)‖/‖z‖ = {self.min_relative_norm:.3e}"
        if self.violation:
            return "sphere pairing violation found"
        return f"no violation found at {int(self.shells['samples'].sum())} samples"

    def to_dict(self) -> dict:
        return {"shells": [{k: (int(v) if k == "samples" else float(v)) for k, v in row.items()}
                           for row in self.shells.to_dict(orient="records")],
                "pairings": {f"{r:g}": rep.to_dict() for r, rep in self.pairings.items()},
                "threshold": float(self.threshold),
                "vanishing": bool(self.vanishing),
                "violation": bool(self.violation),
                "message": self.message}


def perturbation_safety_scan(xi: VectorField,
                             X: VectorField,
                             r_inner: float,
                             r_outer: float,
                             samples: int = 1000,
                             seed: int = 0,
                             shells: int = 8,
                             threshold: float = 1e-2,
                             verbose: bool = False) -> PerturbationReport:
    """
    Scan ξ + X on geometrically spaced spheres between r_inner and r_outer for
    zeros, and test the sphere pairing at r_inner, 1 and r_outer.

    Parameters
    ----------
    xi: VectorField
    X: VectorField
        Perturbation
    r_inner: float
    r_outer: float
    samples: int (default=1000)
        Quasi-random points per sphere
    seed: int (default=0)
    shells: int (default=8)
        Number of spheres in the annulus
    threshold: float (default=1e-2)
    verbose: bool (default=False)

    Returns
    -------
    PerturbationReport

    Raises
    ------
    AssertionError
        Radii not ordered as 0 < r_inner < r_outer
    """
    assert 0 < r_inner < r_outer, "radii must satisfy 0 < r_inner < r_outer"
    assert shells >= 2, "at least two shells are needed"
    field = xi + X
    rows = []
    for r in progress_bar(np.geomspace(r_inner, r_outer, shells), verbose=verbose, desc="shells"):
        Z = sphere_points(field.n, samples, radius=float(r), seed=seed)
        F = field.evaluate_many(Z)
        norms = np.linalg.norm(F, axis=1)
        pairing, margin = _pairing_margins(F, Z)
        rows.append({"radius": float(r),
                     "samples": Z.shape[0],
                     "min_norm": float(norms.min()),
                     "min_relative_norm": float((norms / r).min()),
                     "min_pairing": float(pairing.min()),
                     "min_margin": float(margin.min())})
    table = pd.DataFrame(rows, columns=["radius", "samples", "min_norm", "min_relative_norm",
                                        "min_pairing", "min_margin"])
    pairings = {r: transversality_scan(field, radius=r, samples=samples, seed=seed, threshold=threshold)
                for r in sorted({r_inner, 1., r_outer})}
    report = PerturbationReport(table, pairings, threshold)
    logger.info(f"perturbation scan on [{r_inner:g}, {r_outer:g}]: {report.message}")
    return report
