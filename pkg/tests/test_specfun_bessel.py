"""Spherical Bessel and Riccati-Bessel evaluator checks.

Frozen reference values come from mpmath at 40 digits through
j_l(z) = sqrt(pi/(2z)) J_{l+1/2}(z) and y_l(z) = sqrt(pi/(2z)) Y_{l+1/2}(z).
"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from schifferlab.specfun import (
    L_MAX_DEFAULT,
    L_MAX_SUPPORTED,
    Z_MAX,
    riccati_table,
    set_l_max,
    spherical_bessel_j,
    spherical_bessel_y,
    spherical_jy_table,
)

# mpmath dps=40
REAL_CASES = [
    (1, 1.0, 0.3011686789397568, -1.3817732906760363),
    (0, 2.0, 0.45464871341284085, 0.2080734182735712),
    (5, 3.7, 0.03861365693381353, -0.8920372653142621),
    (3, 0.01, 9.523756613876865e-09, -1500015000.125002),
    (12, 0.5, 3.0738335149913967e-17, -2604711390049800.5),
]

# mpmath dps=40, complex arguments in all quadrants
COMPLEX_CASES = [
    (2, 1.5 + 2.0j,
     0.06299676088597357 + 0.4759831983227017j,
     -0.4153351304703111 + 0.1781595114255945j),
    (6, 3.0 - 4.0j,
     0.011406344305868718 + 0.1501251478658391j,
     0.08738958271028667 + 0.05238816205192107j),
    (10, 8.0 + 0.5j,
     0.016613652165603305 + 0.007534669531694772j,
     -0.47752635189074394 + 0.1980127966043203j),
]


@pytest.mark.parametrize("l, x, jx, yx", REAL_CASES)
def test_real_argument_reference_values(l, x, jx, yx):
    assert_allclose(spherical_bessel_j(l, x), jx, rtol=1e-12)
    assert_allclose(spherical_bessel_y(l, x), yx, rtol=1e-12)


@pytest.mark.parametrize("l, z, jz, yz", COMPLEX_CASES)
def test_complex_argument_reference_values(l, z, jz, yz):
    assert_allclose(spherical_bessel_j(l, z), jz, rtol=1e-12)
    assert_allclose(spherical_bessel_y(l, z), yz, rtol=1e-12)


def test_real_arguments_return_exactly_real_values():
    for l, x, _, _ in REAL_CASES:
        assert spherical_bessel_j(l, x).imag == 0.0
        assert spherical_bessel_y(l, x).imag == 0.0


def test_small_and_zero_arguments():
    assert spherical_bessel_j(0, 0.0) == 1.0
    assert spherical_bessel_j(2, 0.0) == 0.0
    assert abs(spherical_bessel_j(0, math.pi)) < 1e-12
    assert_allclose(spherical_bessel_j(0, 1e-3), 1.0, atol=1e-6)
    assert abs(spherical_bessel_y(0, math.pi / 2)) < 1e-12
    assert_allclose(spherical_bessel_y(0, 1.0), -math.cos(1.0), rtol=1e-14)


def test_riccati_reference_table():
    # mpmath dps=40 at x = 2.3
    S, C, Sp, Cp = riccati_table(2, 2.3)
    assert_allclose(S[2], 0.5462456731467104, rtol=1e-12)
    assert_allclose(C[2], 1.2610846980624133, rtol=1e-12)
    assert_allclose(Sp[2], 0.5154994412290849, rtol=1e-12)
    assert_allclose(Cp[2], -0.6405754040861715, rtol=1e-12)


def test_riccati_closed_form_anchors():
    S, _, _, _ = riccati_table(0, math.pi / 2)
    assert_allclose(S[0], 1.0, rtol=1e-12)  # S_0 = sin
    _, C, _, _ = riccati_table(0, 1e-6)
    assert_allclose(C[0], 1.0, atol=1e-9)  # C_0 = cos
    S1, _, _, _ = riccati_table(1, 1.0)
    assert_allclose(S1[1], 0.3011686789397568, rtol=1e-12)  # S_1(1) = j_1(1)


@pytest.mark.parametrize("z", [0.7, 13.0, 2.0 + 1.0j, 5.0 - 3.0j])
def test_riccati_wronskian_is_minus_one(z):
    S, C, Sp, Cp = riccati_table(12, z)
    assert_allclose(S * Cp - Sp * C, -np.ones(13), rtol=1e-10, atol=1e-12)


def test_wronskian_identity_on_real_grid():
    # j_l y_l' - j_l' y_l = 1/x^2 in the Riccati normalization
    for x in np.linspace(0.1, 100.0, 97):
        S, C, Sp, Cp = riccati_table(20, x)
        assert_allclose(S * Cp - Sp * C, -np.ones(21), rtol=1e-8)


@pytest.mark.parametrize("fn", [spherical_bessel_j, spherical_bessel_y])
def test_three_term_recurrence(fn):
    # f_{l-1} + f_{l+1} = (2l+1)/x f_l, scaled by the largest participant
    for l in (1, 3, 7, 15):
        for x in (0.5, 2.9, 17.0, 64.0):
            fm, f0, fp = (complex(fn(l + d, x)) for d in (-1, 0, 1))
            scale = max(abs(fm), abs(f0), abs(fp), 1e-300)
            assert abs(fm + fp - (2 * l + 1) / x * f0) <= 1e-8 * scale


def test_riccati_solves_its_differential_equation():
    # S_l'' + (1 - l(l+1)/x^2) S_l = 0 by central second differences
    h = 1e-3
    for l in (0, 2, 5):
        for x in (1.3, 4.0, 11.0):
            vals = [riccati_table(l, x + s * h)[0][l] for s in (-1, 0, 1)]
            second = (vals[0] - 2 * vals[1] + vals[2]) / (h * h)
            assert abs(second + (1 - l * (l + 1) / x**2) * vals[1]) < 1e-6


def test_scaled_tables_match_unscaled():
    z = 2.0 + 6.0j
    j, y = spherical_jy_table(5, z)
    js, ys = spherical_jy_table(5, z, scaled=True)
    factor = math.exp(abs(z.imag))
    assert_allclose(js * factor, j, rtol=1e-13)
    assert_allclose(ys * factor, y, rtol=1e-13)
    z = 1.0 + 30.0j
    js, _ = spherical_jy_table(3, z, scaled=True)
    assert_allclose(js[3] * math.exp(30.0), spherical_bessel_j(3, z), rtol=1e-13)


def test_strong_imaginary_argument_needs_scaling():
    with pytest.raises(OverflowError):
        spherical_jy_table(2, 1.0 + 800.0j)
    js, ys = spherical_jy_table(2, 1.0 + 800.0j, scaled=True)
    assert np.all(np.isfinite(js))
    assert np.all(np.isfinite(ys))


def test_domain_validation():
    with pytest.raises(ValueError, match="exceeds L_MAX"):
        spherical_bessel_j(L_MAX_DEFAULT + 1, 1.0)
    with pytest.raises(ValueError, match="exceeds supported range"):
        spherical_bessel_j(0, 2.0 * Z_MAX)
    with pytest.raises(ValueError, match="irregular at 0"):
        spherical_bessel_y(0, 0.0)
    with pytest.raises(ValueError, match="irregular at 0"):
        riccati_table(2, 0.0)


def test_degree_cap_is_adjustable():
    with pytest.raises(ValueError, match="exceeds L_MAX"):
        spherical_bessel_j(80, 5.0)
    set_l_max(80)
    try:
        assert np.isfinite(spherical_bessel_j(80, 5.0))
    finally:
        set_l_max(L_MAX_DEFAULT)
    for bad in (0, L_MAX_SUPPORTED + 1):
        with pytest.raises(ValueError, match="outside supported range"):
            set_l_max(bad)
