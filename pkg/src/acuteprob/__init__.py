"""Probability that three uniform points in a convex region form an acute triangle."""

from .disk import L_CONST, P_DISK
from .errors import ConvergenceError, InvalidRegionError
from .estimator import DEFAULT_SEED, Estimate, estimate_F, estimate_p, quadrature_p
from .geometry import Ball3, Disk, Ellipse, Polygon, RadialRegion
from .geometry.io import load_region

__all__ = [
    "L_CONST", "P_DISK", "ConvergenceError", "InvalidRegionError", "DEFAULT_SEED", "Estimate",
    "estimate_F", "estimate_p", "quadrature_p", "Ball3", "Disk", "Ellipse", "Polygon", "RadialRegion",
    "load_region",
]
