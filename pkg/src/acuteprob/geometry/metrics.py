"""Metric primitives on planar convex regions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.spatial.distance import pdist, squareform

from ..errors import InvalidRegionError
from .regions import Disk, Ellipse, PlanarRegion, Polygon, Region, Similarity, SimilarRegion

_DIRECTIONS = 8192


def _planar(region: Region) -> PlanarRegion:
    if region.dim != 2:
        raise InvalidRegionError(f"expected a planar region, got a {region.dim}D one")
    return region


def area(region: Region) -> float:
    return float(_planar(region).area())


def perimeter(region: Region) -> float:
    return float(_planar(region).perimeter())


def hausdorff_distance_to_unit_disk(region: Region, n_directions: int = _DIRECTIONS) -> float:
    """Hausdorff distance between a convex region and the centered unit disk.

    For convex bodies this is sup_u |h_S(u) - h_D(u)| with h the support
    function, and h_D = 1.
    """
    region = _planar(region)
    if not region.contains(np.zeros(2)):
        raise InvalidRegionError("region does not contain the origin")
    th = 2 * np.pi * np.arange(n_directions) / n_directions
    u = np.stack([np.cos(th), np.sin(th)], -1)
    return float(np.max(np.abs(region.support(u) - 1.0)))


def _diameter_endpoints(region: PlanarRegion):
    if isinstance(region, SimilarRegion):
        p, q = _diameter_endpoints(region.base)
        return region.sim.apply(p), region.sim.apply(q)
    if isinstance(region, Disk):
        c = np.asarray(region.center)
        return c - [region.radius, 0.0], c + [region.radius, 0.0]
    if isinstance(region, Ellipse):
        if region.a >= region.b:
            return np.array([-region.a, 0.0]), np.array([region.a, 0.0])
        return np.array([0.0, -region.b]), np.array([0.0, region.b])
    if isinstance(region, Polygon):
        v = region.vertices
        D = squareform(pdist(v))
        i, j = np.unravel_index(np.argmax(D), D.shape)
        return v[i].copy(), v[j].copy()
    # smooth boundary: dense antipodal search then local refinement
    n = 1024
    th = 2 * np.pi * np.arange(n) / n
    pts = region.boundary_point(th)
    D = squareform(pdist(pts))
    i, j = np.unravel_index(np.argmax(D), D.shape)

    def neg_len(x):
        a, b = region.boundary_point(np.asarray(x))
        return -np.linalg.norm(a - b)

    res = minimize(neg_len, [th[i], th[j]], method="Nelder-Mead",
                   options={"xatol": 1e-11, "fatol": 1e-15, "maxiter": 4000})
    x = res.x if res.fun <= -D[i, j] else np.array([th[i], th[j]])
    a, b = region.boundary_point(x)
    return a, b


def longest_segment_frame(region: Region):
    """Similar copy whose longest chord runs from (0,0) to (1,0).

    Returns (framed_region, similarity) with framed_region = similarity(region).
    """
    region = _planar(region)
    p, q = _diameter_endpoints(region)
    diam = float(np.linalg.norm(q - p))
    if not diam > 0:
        raise InvalidRegionError("region has zero diameter")
    scale = 1.0 / diam
    angle = -float(np.arctan2(q[1] - p[1], q[0] - p[0]))
    sim0 = Similarity(scale, angle, (0.0, 0.0))
    sh = -sim0.apply(p)
    sim = Similarity(scale, angle, (float(sh[0]), float(sh[1])))
    return region.transformed(sim), sim


@dataclass(frozen=True, eq=False)
class HeightProfile:
    x: np.ndarray
    upper: np.ndarray
    lower: np.ndarray

    @property
    def h(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def hbar(self) -> float:
        return float(np.max(self.h))


def height_profile(framed: Region, grid_n: int = 1024) -> HeightProfile:
    """Vertical extent of a framed region over x in [0, 1].

    Samples the uniform grid i/grid_n, plus the vertex abscissae for
    polygons so the maximum is exact there.
    """
    framed = _planar(framed)
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    x = np.arange(grid_n + 1) / grid_n
    if isinstance(framed, Polygon):
        vx = framed.vertices[:, 0]
        x = np.unique(np.concatenate([x, vx[(vx >= 0) & (vx <= 1)]]))
    p = np.stack([x, np.zeros_like(x)], -1)
    t0, t1 = framed.line_clip(p, np.array([0.0, 1.0]))
    hit = np.isfinite(t0) & np.isfinite(t1)
    upper = np.where(hit, t1, 0.0)
    lower = np.where(hit, t0, 0.0)
    return HeightProfile(x, upper, lower)
