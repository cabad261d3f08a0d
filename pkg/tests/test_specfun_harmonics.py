"""Associated Legendre and spherical-harmonic checks.

The Legendre convention here carries no Condon-Shortley phase, so values
relate to scipy's lpmv by a factor (-1)^m.
"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import lpmv

from schifferlab.specfun import (
    SphericalDirection,
    legendre,
    legendre_theta_derivative,
    sphere_quadrature,
    spherical_harmonic,
    ylm,
    ylm_norm,
    ylm_on_grid,
    ylm_theta_derivative,
)


def test_legendre_reference_values():
    assert legendre(2, 0, 0.5) == pytest.approx(-0.125, rel=1e-14)
    assert legendre(1, 1, 0.0) == pytest.approx(1.0, rel=1e-14)
    # -36309 sqrt(91) / 40000, sympy with the phase stripped
    assert legendre(5, 3, 0.3) == pytest.approx(-8.659144616061972, rel=1e-13)


def test_legendre_matches_scipy_up_to_phase():
    ts = np.linspace(-0.95, 0.95, 11)
    for l in range(9):
        for m in range(l + 1):
            ours = legendre(l, m, ts)
            ref = (-1.0) ** m * lpmv(m, l, ts)
            assert_allclose(ours, ref, rtol=1e-10, atol=1e-12)


def test_legendre_theta_derivative_matches_finite_differences():
    h = 1e-6
    for l, m in [(1, 0), (3, 2), (6, 4), (8, 8)]:
        for theta in (0.4, 1.2, 2.2):
            d = legendre_theta_derivative(l, m, theta)
            fd = (legendre(l, m, math.cos(theta + h))
                  - legendre(l, m, math.cos(theta - h))) / (2 * h)
            assert_allclose(d, fd, rtol=1e-6, atol=1e-6)


def test_harmonic_reference_values():
    assert ylm(0, 0, 0.3, 0.7) == pytest.approx(0.28209479177387814, rel=1e-14)
    assert ylm(1, 0, 0.0, 0.0) == pytest.approx(0.4886025119029199, rel=1e-14)
    assert ylm(1, 1, math.pi / 2, 0.0) == pytest.approx(0.3454941494713355, rel=1e-14)


def test_norm_factor_consistency():
    # at theta = pi/2, phi = 0 the (1, 1) harmonic reduces to its norm factor
    assert ylm(1, 1, math.pi / 2, 0.0) == pytest.approx(
        ylm_norm(1, 1) * legendre(1, 1, 0.0), rel=1e-14)


def test_conjugation_symmetry_is_exact():
    for l, m in [(1, 1), (3, 2), (5, 5), (8, 3)]:
        assert ylm(l, -m, 1.1, 0.4) == np.conj(ylm(l, m, 1.1, 0.4))


def test_quadrature_weights_sum_to_sphere_area():
    quad = sphere_quadrature()
    assert_allclose(np.sum(quad.weights), 4 * math.pi, rtol=1e-12)
    assert quad.integrate(np.ones_like(quad.weights)) == pytest.approx(
        4 * math.pi, rel=1e-12)


def test_harmonics_are_orthonormal_under_the_quadrature():
    quad = sphere_quadrature()
    assert_allclose(quad.integrate(np.abs(ylm_on_grid(2, 1, quad)) ** 2),
                    1.0, rtol=1e-10)
    pairs = [(l, m) for l in range(9) for m in range(-l, l + 1)]
    basis = np.array([ylm_on_grid(l, m, quad) for l, m in pairs])
    gram = np.einsum("iab,ab,jab->ij", basis, quad.weights, np.conj(basis))
    assert_allclose(gram, np.eye(len(pairs)), atol=1e-8)


def test_grid_synthesis_matches_pointwise_values():
    quad = sphere_quadrature(24, 48)
    grid = ylm_on_grid(4, -3, quad)
    direct = ylm(4, -3, quad.theta_grid, quad.phi_grid)
    assert_allclose(grid, direct, rtol=1e-12, atol=1e-14)


def test_theta_derivative_matches_finite_differences():
    h = 1e-6
    for l, m in [(2, 1), (5, -3), (7, 0)]:
        for theta in (0.5, 1.3, 2.4):
            d = ylm_theta_derivative(l, m, theta, 0.8)
            fd = (ylm(l, m, theta + h, 0.8) - ylm(l, m, theta - h, 0.8)) / (2 * h)
            assert_allclose(d, fd, rtol=1e-6, atol=1e-8)


def test_direction_evaluator_matches_grid_form():
    d = SphericalDirection(1.05, 2.3)
    assert spherical_harmonic(3, 2, d) == pytest.approx(complex(ylm(3, 2, 1.05, 2.3)))


def test_degree_and_order_validation():
    with pytest.raises(ValueError, match="exceeds degree"):
        ylm(2, 3, 0.5, 0.5)
    with pytest.raises(ValueError, match="exceeds degree"):
        legendre(2, 3, 0.5)
    with pytest.raises(ValueError, match="exceeds degree"):
        ylm(-1, 0, 0.5, 0.5)


def test_integrate_rejects_wrong_shape():
    quad = sphere_quadrature(16, 32)
    with pytest.raises(ValueError):
        quad.integrate(np.ones((4, 4)))
