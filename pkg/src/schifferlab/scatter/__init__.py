"""Starlike-domain geometry and the ball-or-nothing boundary tests."""

from .domain import (
    StarlikeDomain,
    boundary_normal,
    load_domain,
    ray_radius,
    save_domain,
    unit_ball,
)
from .farfield import FarFieldPattern, far_field_from_coeffs, rellich_expand
from .overdetermined import (
    CollocationFrame,
    ball_eigenfunction,
    collocation_frame,
    overdetermined_residual,
    residual_scan,
    trial_convergence,
)
from .rays import RayEigenReport, RayScanResult, axis_directions, per_ray_eigen_scan

__all__ = [
    "StarlikeDomain",
    "boundary_normal",
    "load_domain",
    "ray_radius",
    "save_domain",
    "unit_ball",
    "FarFieldPattern",
    "far_field_from_coeffs",
    "rellich_expand",
    "CollocationFrame",
    "ball_eigenfunction",
    "collocation_frame",
    "overdetermined_residual",
    "residual_scan",
    "trial_convergence",
    "RayEigenReport",
    "RayScanResult",
    "axis_directions",
    "per_ray_eigen_scan",
]
