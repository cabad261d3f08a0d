"""Per-ray eigenvalue comparison across a starlike boundary.

Each ray from the origin meets the boundary at its own radius R_hat, and
the two-way radial problem along that ray has its own eigenvalue list and
density R_hat/pi.  A ball gives every ray the same list; a non-ball
separates the per-ray densities and empties the cross-ray intersection.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from ..eigsearch import DensityEstimate, EigenvalueRecord, find_real_eigenvalues
from ..specfun import SphericalDirection
from .domain import StarlikeDomain, ray_radius

__all__ = ["RayEigenReport", "RayScanResult", "per_ray_eigen_scan", "axis_directions"]

_MATCH_TOL = 1e-6


@dataclasses.dataclass(frozen=True)
class RayEigenReport:
    """Eigenvalue scan along a single ray."""

    direction: SphericalDirection
    R_hat: float
    eigenvalues: dict[int, tuple[EigenvalueRecord, ...]]
    density: DensityEstimate


@dataclasses.dataclass(frozen=True)
class RayScanResult:
    """Per-ray reports plus the cross-ray eigenvalue intersection per degree."""

    reports: tuple[RayEigenReport, ...]
    common: dict[int, tuple[float, ...]]

    @property
    def density_spread(self) -> float:
        """(max - min)/mean of the per-ray densities."""
        ds = [r.density.density for r in self.reports]
        mean = sum(ds) / len(ds)
        if mean == 0.0:
            return 0.0
        return (max(ds) - min(ds)) / mean

    @property
    def intersection_size(self) -> int:
        return sum(len(v) for v in self.common.values())


def axis_directions() -> tuple[SphericalDirection, ...]:
    """The six coordinate half-axes."""
    half = math.pi / 2
    return (
        SphericalDirection(0.0, 0.0),
        SphericalDirection(math.pi, 0.0),
        SphericalDirection(half, 0.0),
        SphericalDirection(half, half),
        SphericalDirection(half, math.pi),
        SphericalDirection(half, 3 * half),
    )


def _intersect(lists: list[tuple[float, ...]], tol: float) -> tuple[float, ...]:
    if not lists:
        return ()
    survivors = list(lists[0])
    for other in lists[1:]:
        survivors = [k for k in survivors if any(abs(k - q) <= tol for q in other)]
    return tuple(survivors)


def _scan_one(domain: StarlikeDomain, direction: SphericalDirection,
              l_max: int, k_max: float) -> RayEigenReport:
    R = ray_radius(domain, direction)
    eigen = {l: tuple(find_real_eigenvalues(l, R, k_max))
             for l in range(l_max + 1)}
    count = len(eigen[0])
    target = R / math.pi
    density = DensityEstimate(count, float(k_max), count / k_max, target,
                              abs(count / k_max - target) / target)
    return RayEigenReport(direction, R, eigen, density)


def per_ray_eigen_scan(domain: StarlikeDomain,
                       directions: Sequence[SphericalDirection],
                       l_max: int, k_max: float, threads: int = 1) -> RayScanResult:
    """Scan each ray's radial eigenvalues up to k_max for l = 0..l_max.

    The per-ray density compares the l = 0 count on (0, k_max] against
    the ray's own target R_hat/pi; the cross-ray intersection keeps the
    eigenvalues matching on every ray within 1e-6.  Rays are independent,
    so ``threads > 1`` fans them out; report order follows the input.
    """
    if not directions:
        raise ValueError("at least one direction is required")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    if threads == 1:
        reports = [_scan_one(domain, d, l_max, k_max) for d in directions]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(
                lambda d: _scan_one(domain, d, l_max, k_max), directions))
    common = {}
    for l in range(l_max + 1):
        lists = [tuple(rec.k for rec in rep.eigenvalues[l]) for rep in reports]
        common[l] = _intersect(lists, _MATCH_TOL)
    return RayScanResult(tuple(reports), common)
