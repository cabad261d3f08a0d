"""Spherical Bessel and Riccati-Bessel functions for real and complex argument.

The radial Helmholtz equation y'' + (k^2 - l(l+1)/r^2) y = 0 is solved by the
Riccati-Bessel pair S_l(x) = x j_l(x) (regular at 0) and C_l(x) = -x y_l(x)
(irregular), evaluated here at x = k r with k anywhere in the complex plane.

Evaluation strategy:
    * j_l: upward recurrence from j_0, j_1 when |z| >= l (stable direction),
      otherwise downward recurrence seeded by the continued fraction for
      j_l / j_{l-1} and renormalized against j_0 or j_1 (Miller style).
    * y_l: upward recurrence always (y is the dominant solution upward).

All internal recurrences run on values scaled by exp(-|Im z|), so tables stay
representable for large |Im z|; the unscaled public functions multiply the
factor back in.  For real z the scale factor is exactly 1 and real inputs
propagate zero imaginary parts through every recurrence.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

# Hard validation ceilings.  L_MAX is the advertised order cap; callers that
# need more (up to L_MAX_SUPPORTED) may raise it module-wide.
L_MAX_DEFAULT = 60
L_MAX_SUPPORTED = 120
L_MAX = L_MAX_DEFAULT

Z_MAX = 1.0e4

# |z| below which j_l falls back to the leading power series.
_SERIES_CUTOFF = 1.0e-6


def set_l_max(n: int) -> None:
    """Raise or lower the order cap, within the supported ceiling."""
    global L_MAX
    if not 1 <= n <= L_MAX_SUPPORTED:
        raise ValueError(f"l_max {n} outside supported range 1..{L_MAX_SUPPORTED}")
    L_MAX = n


def _check_order_arg(l: int, z: complex, need_nonzero: bool) -> complex:
    if l < 0 or l != int(l):
        raise ValueError(f"order l must be a nonnegative integer, got {l!r}")
    if l > L_MAX:
        raise ValueError(f"order l={l} exceeds L_MAX={L_MAX}")
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"argument must be finite, got {z!r}")
    if abs(z) > Z_MAX:
        raise ValueError(f"|z|={abs(z):.3g} exceeds supported range {Z_MAX:.0e}")
    if need_nonzero and z == 0:
        raise ValueError("argument z=0 is outside the domain (irregular at 0)")
    return z


def _scaled_trig(z: complex) -> tuple[complex, complex]:
    """(sin z, cos z) times exp(-|Im z|); exact for real z."""
    b = z.imag
    m = abs(b)
    # e^{iz - m} and e^{-iz - m}: one factor is e^{-2m}, the other O(1).
    ep = cmath.exp(1j * z - m)
    em = cmath.exp(-1j * z - m)
    s = (ep - em) / 2j
    c = (ep + em) / 2
    return s, c


def _jy_scaled(lmax: int, z: complex) -> tuple[np.ndarray, np.ndarray]:
    """Tables of j_0..j_lmax and y_0..y_lmax, each scaled by exp(-|Im z|)."""
    zs, zc = _scaled_trig(z)
    j = np.empty(lmax + 1, dtype=complex)
    y = np.empty(lmax + 1, dtype=complex)

    az = abs(z)
    if az < _SERIES_CUTOFF:
        # Leading series; scale factor is 1 here since |Im z| < 1e-6.
        dfact = 1.0
        zp = 1.0 + 0j
        for l in range(lmax + 1):
            j[l] = zp / dfact * (1 - z * z / (2 * (2 * l + 3)))
            zp *= z
            dfact *= 2 * l + 3
    elif az >= lmax:
        j[0] = zs / z
        if lmax >= 1:
            j[1] = j[0] / z - zc / z
        for l in range(1, lmax):
            j[l + 1] = (2 * l + 1) / z * j[l] - j[l - 1]
    else:
        _miller_downward(j, lmax, z, zs, zc)

    # y: upward from y_0, y_1 (dominant solution, always stable).
    y[0] = -zc / z
    if lmax >= 1:
        y[1] = y[0] / z - zs / z
    for l in range(1, lmax):
        y[l + 1] = (2 * l + 1) / z * y[l] - y[l - 1]
    return j, y


def _ratio_cf(l: int, z: complex, max_iter: int = 20000) -> complex:
    """j_l(z)/j_{l-1}(z) by the modified Lentz continued fraction."""
    tiny = 1e-290
    # R_l = 1 / ((2l+1)/z - R_{l+1}) expanded with partial numerators -1.
    b = (2 * l + 1) / z
    f = b if b != 0 else tiny
    c = f
    d = 0.0 + 0j
    for n in range(1, max_iter):
        b = (2 * (l + n) + 1) / z
        d = b - d
        if d == 0:
            d = tiny
        c = b - 1 / c
        if c == 0:
            c = tiny
        d = 1 / d
        delta = c * d
        f *= delta
        if abs(delta - 1) < 1e-16:
            break
    return 1 / f


def _miller_downward(j: np.ndarray, lmax: int, z: complex,
                     zs: complex, zc: complex) -> None:
    """Fill j[0..lmax] (scaled) by downward recurrence from a CF-seeded start."""
    r = _ratio_cf(lmax, z)
    j[lmax] = r
    j[lmax - 1] = 1.0
    for l in range(lmax - 1, 0, -1):
        j[l - 1] = (2 * l + 1) / z * j[l] - j[l + 1]
        m = abs(j[l - 1])
        if m > 1e250:
            j[l - 1:] /= m
    j0 = zs / z
    j1 = j0 / z - zc / z
    # Normalize against whichever seed is farther from a zero.
    if abs(j0) >= abs(j1) and j[0] != 0:
        j *= j0 / j[0]
    elif j[1] != 0:
        j *= j1 / j[1]
    else:
        j *= j0 / j[0]


def _unscale(value: complex, z: complex) -> complex:
    m = abs(z.imag)
    out = value if m == 0 else value * math.exp(m)
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise OverflowError(f"value overflows double range at z={z!r}")
    return out


def spherical_jy_table(lmax: int, z: complex, scaled: bool = False):
    """Arrays (j_0..j_lmax, y_0..y_lmax) at z.

    With ``scaled=True`` the returned values carry an implicit factor
    exp(|Im z|); callers doing log-magnitude work add ``abs(z.imag)`` back
    themselves and never overflow.
    """
    z = _check_order_arg(lmax, z, need_nonzero=True)
    j, y = _jy_scaled(lmax, z)
    if scaled:
        return j, y
    m = abs(z.imag)
    if m > 0:
        f = math.exp(m)
        j = j * f
        y = y * f
        if not (np.isfinite(j).all() and np.isfinite(y).all()):
            raise OverflowError(f"Bessel table overflows double range at z={z!r}")
    return j, y


def spherical_bessel_j(l: int, z: complex) -> complex:
    """Spherical Bessel function j_l(z), complex argument allowed."""
    z = _check_order_arg(l, z, need_nonzero=False)
    if z == 0:
        return 1.0 + 0j if l == 0 else 0.0 + 0j
    j, _ = _jy_scaled(l, z)
    return _unscale(j[l], z)


def spherical_bessel_y(l: int, z: complex) -> complex:
    """Spherical Neumann function y_l(z); z=0 is a domain error."""
    z = _check_order_arg(l, z, need_nonzero=True)
    _, y = _jy_scaled(l, z)
    return _unscale(y[l], z)


def riccati_S(l: int, z: complex) -> complex:
    """S_l(z) = z j_l(z), the regular Riccati-Bessel function."""
    z = _check_order_arg(l, z, need_nonzero=False)
    if z == 0:
        return 0.0 + 0j
    j, _ = _jy_scaled(l, z)
    return _unscale(z * j[l], z)


def riccati_C(l: int, z: complex) -> complex:
    """C_l(z) = -z y_l(z), the irregular Riccati-Bessel function."""
    z = _check_order_arg(l, z, need_nonzero=True)
    _, y = _jy_scaled(l, z)
    return _unscale(-z * y[l], z)


def riccati_table(lmax: int, z: complex, scaled: bool = False):
    """(S, C, S', C') arrays for orders 0..lmax at z, primes w.r.t. z.

    S_l' = S_{l-1} - (l/z) S_l for l >= 1 (same relation for C); the order-0
    derivatives are cos z and -sin z.  ``scaled`` as in spherical_jy_table.
    """
    z = _check_order_arg(lmax, z, need_nonzero=True)
    j, y = _jy_scaled(lmax, z)
    S = z * j
    C = -z * y
    zs, zc = _scaled_trig(z)
    Sp = np.empty_like(S)
    Cp = np.empty_like(C)
    Sp[0] = zc
    Cp[0] = -zs
    for l in range(1, lmax + 1):
        Sp[l] = S[l - 1] - l / z * S[l]
        Cp[l] = C[l - 1] - l / z * C[l]
    if scaled:
        return S, C, Sp, Cp
    m = abs(z.imag)
    if m > 0:
        f = math.exp(m)
        S, C, Sp, Cp = S * f, C * f, Sp * f, Cp * f
        for arr in (S, C, Sp, Cp):
            if not np.isfinite(arr).all():
                raise OverflowError(f"Riccati table overflows double range at z={z!r}")
    return S, C, Sp, Cp


def riccati_S_prime(l: int, z: complex) -> complex:
    """d/dz of S_l at z."""
    return riccati_table(l, z)[2][l]


def riccati_C_prime(l: int, z: complex) -> complex:
    """d/dz of C_l at z."""
    return riccati_table(l, z)[3][l]
