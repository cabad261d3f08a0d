"""Starlike domain geometry from spherical-harmonic boundary coefficients.

A domain is the region r < rho(theta, phi) for a positive function on the
sphere synthesized from real coefficients c_{l,m} with the conjugate
symmetry c_{l,-m} = c_{l,m}, so the synthesized rho is real.  Every ray
from the origin meets the boundary exactly once, at radius rho; the
outward normal comes from the graph-over-sphere gradient formula.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import tempfile
from typing import Iterable

import numpy as np

from ..specfun import (
    SphericalDirection,
    SphereQuadrature,
    sphere_quadrature,
    ylm,
    ylm_on_grid,
    ylm_theta_derivative,
)

__all__ = [
    "StarlikeDomain",
    "ray_radius",
    "boundary_normal",
    "load_domain",
    "save_domain",
    "unit_ball",
]

_L_GEOM_CAP = 16


@dataclasses.dataclass(frozen=True)
class StarlikeDomain:
    """Boundary coefficients of rho: S^2 -> R+ up to degree L_geom.

    ``rho_coeffs`` is a tuple of (l, m, value) triples with real values
    and the symmetry c_{l,-m} = c_{l,m}; construction validates the
    triples and checks min rho > 0 on the reference quadrature grid.
    """

    L_geom: int
    rho_coeffs: tuple[tuple[int, int, float], ...]

    def __post_init__(self) -> None:
        if not (0 <= self.L_geom <= _L_GEOM_CAP):
            raise ValueError(f"L_geom must lie in [0, {_L_GEOM_CAP}], got {self.L_geom}")
        seen: dict[tuple[int, int], float] = {}
        for entry in self.rho_coeffs:
            if len(entry) != 3:
                raise ValueError(f"coefficient entries are (l, m, value), got {entry!r}")
            l, m, value = entry
            if int(l) != l or int(m) != m:
                raise ValueError(f"l, m must be integers, got ({l}, {m})")
            l, m = int(l), int(m)
            if not (0 <= l <= self.L_geom and abs(m) <= l):
                raise ValueError(f"mode ({l}, {m}) outside degree range 0..{self.L_geom}")
            if not (np.isreal(value) and math.isfinite(float(np.real(value)))):
                raise ValueError(f"coefficient for ({l}, {m}) must be a finite real")
            if (l, m) in seen:
                raise ValueError(f"duplicate coefficient for mode ({l}, {m})")
            seen[(l, m)] = float(np.real(value))
        for (l, m), value in seen.items():
            if m != 0:
                mirror = seen.get((l, -m), 0.0)
                if abs(mirror - value) > 1e-14 * max(1.0, abs(value)):
                    raise ValueError(
                        f"realness needs c_({l},{-m}) = c_({l},{m}); "
                        f"got {mirror} vs {value}")
        object.__setattr__(self, "rho_coeffs",
                           tuple(sorted((l, m, v) for (l, m), v in seen.items())))
        grid = self.rho_on_grid(sphere_quadrature())
        if float(np.min(grid)) <= 0.0:
            raise ValueError("rho must be positive: the domain must contain the origin")

    def rho_on_grid(self, quad: SphereQuadrature) -> np.ndarray:
        """Synthesize rho on a full quadrature grid."""
        total = np.zeros((quad.theta.shape[0], quad.phi.shape[0]), dtype=complex)
        for l, m, value in self.rho_coeffs:
            total += value * ylm_on_grid(l, m, quad)
        return total.real


def unit_ball() -> StarlikeDomain:
    """The ball of radius one: a single constant mode."""
    return StarlikeDomain(0, ((0, 0, math.sqrt(4 * math.pi)),))


def _synthesis(domain: StarlikeDomain, theta: float, phi: float) -> tuple[float, float, float]:
    """(rho, d rho/d theta, d rho/d phi) at one direction, term-wise."""
    rho = 0.0 + 0.0j
    dth = 0.0 + 0.0j
    dph = 0.0 + 0.0j
    for l, m, value in domain.rho_coeffs:
        y = ylm(l, m, theta, phi)
        rho += value * y
        dth += value * ylm_theta_derivative(l, m, theta, phi)
        dph += value * (1j * m) * y
    return rho.real, dth.real, dph.real


def ray_radius(domain: StarlikeDomain, direction: SphericalDirection) -> float:
    """rho(direction): the radius where the ray meets the boundary."""
    rho, _, _ = _synthesis(domain, direction.theta, direction.phi)
    if rho <= 0.0:
        raise ValueError(f"synthesis gave rho = {rho} <= 0 at {direction}")
    return float(rho)


def _normal_spherical(domain: StarlikeDomain,
                      direction: SphericalDirection) -> tuple[float, float, float]:
    """Outward unit normal components (n_r, n_theta, n_phi)."""
    theta, phi = direction.theta, direction.phi
    rho, dth, dph = _synthesis(domain, theta, phi)
    if rho <= 0.0:
        raise ValueError(f"synthesis gave rho = {rho} <= 0 at {direction}")
    sin_t = max(math.sin(theta), 1e-12)
    # gradient of (r - rho(theta, phi)) in the spherical frame, at r = rho
    v = np.array([1.0, -dth / rho, -dph / (rho * sin_t)])
    v /= np.linalg.norm(v)
    return float(v[0]), float(v[1]), float(v[2])


def boundary_normal(domain: StarlikeDomain, direction: SphericalDirection) -> np.ndarray:
    """Outward unit normal of the surface r = rho at the given direction (Cartesian)."""
    n_r, n_t, n_p = _normal_spherical(domain, direction)
    theta, phi = direction.theta, direction.phi
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    r_hat = np.array([st * cp, st * sp, ct])
    t_hat = np.array([ct * cp, ct * sp, -st])
    p_hat = np.array([-sp, cp, 0.0])
    return n_r * r_hat + n_t * t_hat + n_p * p_hat


def load_domain(path: str | os.PathLike) -> StarlikeDomain:
    """Read a domain file: {"L_geom": int, "rho_coeffs": [[l, m, value], ...]}."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict) or "L_geom" not in raw or "rho_coeffs" not in raw:
        raise ValueError(f"domain file {path} needs fields L_geom and rho_coeffs")
    entries = raw["rho_coeffs"]
    if not isinstance(entries, list) or not all(
            isinstance(e, (list, tuple)) and len(e) == 3 for e in entries):
        raise ValueError("rho_coeffs must be a list of [l, m, value] triples")
    return StarlikeDomain(int(raw["L_geom"]),
                          tuple((int(e[0]), int(e[1]), float(e[2])) for e in entries))


def save_domain(domain: StarlikeDomain, path: str | os.PathLike) -> None:
    """Write the domain file atomically (temp file then rename)."""
    payload = {"L_geom": domain.L_geom,
               "rho_coeffs": [[l, m, v] for l, m, v in domain.rho_coeffs]}
    directory = os.path.dirname(os.fspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
