"""Convex region variants.

Every planar region exposes the same small toolkit: membership, chord
clipping along lines, ray exit distances, support function, boundary
sampling, a 2D quadrature rule, and uniform sampling. Regions are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import ellipe, sph_harm_y

from ..errors import ConvergenceError, InvalidRegionError
from ..series import FourierSeries, fourier_decompose

CONVEXITY_GRID = 4096
MAX_REJECTIONS = 10**6


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


def _gauss01(n: int, power: int = 1):
    """Gauss-Legendre on [0,1], optionally clustered toward 1 via s = 1-(1-u)^power."""
    u, w = leggauss(n)
    u = (u + 1) / 2
    w = w / 2
    s = 1 - (1 - u) ** power
    ds = power * (1 - u) ** (power - 1) * w
    return s, ds


def _polar_nodes(R_of_phi, resolution: int):
    """Quadrature for a star-shaped region r < R(phi) about the origin."""
    s, ds = _gauss01(resolution, power=3)
    nphi = 2 * resolution
    phi = 2 * np.pi * np.arange(nphi) / nphi
    Rp = R_of_phi(phi)
    S, PH = np.meshgrid(s, phi, indexing="ij")
    rr = S * Rp
    pts = np.stack([rr * np.cos(PH), rr * np.sin(PH)], axis=-1).reshape(-1, 2)
    w = (S * Rp ** 2 * ds[:, None] * (2 * np.pi / nphi)).ravel()
    return pts, w


# ---------------------------------------------------------------- similarity

@dataclass(frozen=True)
class Similarity:
    """x -> scale * Rot(angle) x + shift."""

    scale: float = 1.0
    angle: float = 0.0
    shift: tuple = (0.0, 0.0)

    @property
    def matrix(self) -> np.ndarray:
        c, s = np.cos(self.angle), np.sin(self.angle)
        return self.scale * np.array([[c, -s], [s, c]])

    def apply(self, x):
        return np.asarray(x, dtype=float) @ self.matrix.T + np.asarray(self.shift)

    def apply_vector(self, v):
        return np.asarray(v, dtype=float) @ self.matrix.T

    def inverse(self) -> "Similarity":
        inv = 1.0 / self.scale
        c, s = np.cos(-self.angle), np.sin(-self.angle)
        sh = -inv * (np.array([[c, -s], [s, c]]) @ np.asarray(self.shift))
        return Similarity(inv, -self.angle, (float(sh[0]), float(sh[1])))

    def compose(self, inner: "Similarity") -> "Similarity":
        """self after inner."""
        sh = self.apply(np.asarray(inner.shift))
        return Similarity(self.scale * inner.scale, self.angle + inner.angle,
                          (float(sh[0]), float(sh[1])))


# ---------------------------------------------------------------- base

class Region:
    dim = 2
    kind = "region"

    def contains(self, pts) -> np.ndarray:
        raise NotImplementedError

    def bbox(self):
        raise NotImplementedError

    def measure(self) -> float:
        """Area (planar) or volume (3D)."""
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """n points uniform in the region, by rejection from the bounding box."""
        lo, hi = (np.asarray(b, dtype=float) for b in self.bbox())
        out = np.empty((n, self.dim))
        filled = 0
        accept = max(self.measure() / np.prod(hi - lo), 1e-3)
        misses = 0
        while filled < n:
            m = int((n - filled) / accept * 1.1) + 16
            cand = lo + (hi - lo) * rng.random((m, self.dim))
            ok = cand[self.contains(cand)]
            if ok.shape[0] == 0:
                misses += m
                if misses > MAX_REJECTIONS:
                    raise InvalidRegionError(
                        f"rejection sampler exceeded {MAX_REJECTIONS} consecutive misses")
                continue
            misses = 0
            take = min(ok.shape[0], n - filled)
            out[filled:filled + take] = ok[:take]
            filled += take
        return out


class PlanarRegion(Region):
    dim = 2

    def area(self) -> float:
        raise NotImplementedError

    def measure(self) -> float:
        return self.area()

    def perimeter(self) -> float:
        raise NotImplementedError

    def line_clip(self, p, d):
        """Parameters t0 <= t1 where p + t d enters and leaves the region (nan if missed)."""
        raise NotImplementedError

    def ray_exit(self, z, alpha):
        """Distance from interior points z to the boundary in direction alpha."""
        z = np.asarray(z, dtype=float)
        alpha = np.asarray(alpha, dtype=float)
        e = np.stack([np.cos(alpha), np.sin(alpha)], axis=-1)
        return self.line_clip(z, e)[1]

    def support(self, u) -> np.ndarray:
        """max over the region of x.u, for unit vectors u of shape (..., 2)."""
        raise NotImplementedError

    def boundary_points(self, n: int) -> np.ndarray:
        raise NotImplementedError

    def quadrature_nodes(self, resolution: int):
        """Nodes and weights integrating smooth functions over the region."""
        raise NotImplementedError

    def transformed(self, sim: Similarity) -> "PlanarRegion":
        return SimilarRegion(self, sim)

    def boundary_point(self, theta):
        """Smooth boundary parameterization (used for diameter refinement)."""
        raise NotImplementedError


# ---------------------------------------------------------------- disk

@dataclass(frozen=True)
class Disk(PlanarRegion):
    radius: float = 1.0
    center: tuple = (0.0, 0.0)
    kind = "disk"

    def __post_init__(self):
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise InvalidRegionError("disk radius must be positive")
        c = tuple(float(x) for x in self.center)
        if len(c) != 2 or not np.all(np.isfinite(c)):
            raise InvalidRegionError("disk center must be a finite 2-vector")
        object.__setattr__(self, "center", c)

    def contains(self, pts):
        q = np.asarray(pts) - np.asarray(self.center)
        return np.einsum("...i,...i->...", q, q) <= self.radius ** 2

    def bbox(self):
        c = np.asarray(self.center)
        return c - self.radius, c + self.radius

    def area(self):
        return np.pi * self.radius ** 2

    def perimeter(self):
        return 2 * np.pi * self.radius

    def line_clip(self, p, d):
        q = np.asarray(p, dtype=float) - np.asarray(self.center)
        d = np.asarray(d, dtype=float)
        a = np.einsum("...i,...i->...", d, d)
        b = np.einsum("...i,...i->...", q, d)
        c = np.einsum("...i,...i->...", q, q) - self.radius ** 2
        disc = b * b - a * c
        sq = np.sqrt(np.where(disc >= 0, disc, np.nan))
        # stable root pair: the larger-magnitude root first, the other via t0*t1 = c/a
        big = np.where(b >= 0, -b - sq, -b + sq) / a
        with np.errstate(divide="ignore", invalid="ignore"):
            other = np.where(big != 0, c / (a * big), 0.0)
        t0 = np.minimum(big, other)
        t1 = np.maximum(big, other)
        return t0, t1

    def support(self, u):
        u = np.asarray(u, dtype=float)
        return u @ np.asarray(self.center) + self.radius * np.linalg.norm(u, axis=-1)

    def boundary_point(self, theta):
        theta = np.asarray(theta, dtype=float)
        return np.asarray(self.center) + self.radius * np.stack([np.cos(theta), np.sin(theta)], -1)

    def boundary_points(self, n):
        return self.boundary_point(2 * np.pi * np.arange(n) / n)

    def quadrature_nodes(self, resolution):
        pts, w = _polar_nodes(lambda ph: np.full_like(ph, self.radius), resolution)
        return pts + np.asarray(self.center), w

    def transformed(self, sim):
        c = sim.apply(np.asarray(self.center))
        return Disk(self.radius * sim.scale, (float(c[0]), float(c[1])))


# ---------------------------------------------------------------- ellipse

@dataclass(frozen=True)
class Ellipse(PlanarRegion):
    """Axis-aligned ellipse (x/a)^2 + (y/b)^2 <= 1."""

    a: float
    b: float
    kind = "ellipse"

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b) and self.a > 0 and self.b > 0):
            raise InvalidRegionError("ellipse semi-axes must be positive")

    @property
    def _scale(self):
        return np.array([self.a, self.b])

    def contains(self, pts):
        q = np.asarray(pts) / self._scale
        return np.einsum("...i,...i->...", q, q) <= 1.0

    def bbox(self):
        return -self._scale, self._scale

    def area(self):
        return np.pi * self.a * self.b

    def perimeter(self):
        a, b = max(self.a, self.b), min(self.a, self.b)
        return 4 * a * ellipe(1 - (b / a) ** 2)

    def line_clip(self, p, d):
        return Disk().line_clip(np.asarray(p) / self._scale, np.asarray(d) / self._scale)

    def support(self, u):
        u = np.asarray(u, dtype=float)
        return np.sqrt((self.a * u[..., 0]) ** 2 + (self.b * u[..., 1]) ** 2)

    def boundary_point(self, theta):
        theta = np.asarray(theta, dtype=float)
        return np.stack([self.a * np.cos(theta), self.b * np.sin(theta)], -1)

    def boundary_points(self, n):
        return self.boundary_point(2 * np.pi * np.arange(n) / n)

    def quadrature_nodes(self, resolution):
        pts, w = Disk().quadrature_nodes(resolution)
        return pts * self._scale, w * self.a * self.b


# ---------------------------------------------------------------- polygon

@dataclass(frozen=True, eq=False)
class Polygon(PlanarRegion):
    vertices: np.ndarray
    kind = "polygon"

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise InvalidRegionError("polygon needs at least 3 vertices of dimension 2")
        if not np.all(np.isfinite(v)):
            raise InvalidRegionError("polygon vertices must be finite")
        e = np.roll(v, -1, axis=0) - v
        scale2 = np.max(np.sum((v - v.mean(0)) ** 2, axis=1))
        cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
        area = 0.5 * np.sum(v[:, 0] * np.roll(v[:, 1], -1) - np.roll(v[:, 0], -1) * v[:, 1])
        if not area > 1e-12 * scale2:
            raise InvalidRegionError("polygon must be counter-clockwise with positive area")
        if np.any(cross < -1e-12 * scale2):
            raise InvalidRegionError("polygon is not convex")
        if np.any(np.linalg.norm(e, axis=1) == 0):
            raise InvalidRegionError("polygon has repeated vertices")
        object.__setattr__(self, "vertices", _frozen(v))
        normals = np.stack([e[:, 1], -e[:, 0]], axis=1)
        object.__setattr__(self, "_normals", _frozen(normals))
        object.__setattr__(self, "_offsets", _frozen(np.einsum("ij,ij->i", normals, v)))
        object.__setattr__(self, "_area", float(area))

    @classmethod
    def rectangle(cls, width: float, height: float, origin=(0.0, 0.0)) -> "Polygon":
        x, y = origin
        return cls([[x, y], [x + width, y], [x + width, y + height], [x, y + height]])

    def contains(self, pts):
        pts = np.asarray(pts, dtype=float)
        tol = 1e-14 * (1 + np.abs(self._offsets))
        return np.all(pts @ self._normals.T <= self._offsets + tol, axis=-1)

    def bbox(self):
        return self.vertices.min(0), self.vertices.max(0)

    def area(self):
        return self._area

    def perimeter(self):
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        return float(np.sum(np.linalg.norm(e, axis=1)))

    def line_clip(self, p, d):
        p = np.asarray(p, dtype=float)
        d = np.asarray(d, dtype=float)
        num = self._offsets - p @ self._normals.T
        den = d @ self._normals.T
        num, den = np.broadcast_arrays(num, den)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = num / den
        t1 = np.min(np.where(den > 0, ratio, np.inf), axis=-1)
        t0 = np.max(np.where(den < 0, ratio, -np.inf), axis=-1)
        parallel_out = np.any((den == 0) & (num < 0), axis=-1)
        miss = parallel_out | (t0 > t1)
        return np.where(miss, np.nan, t0), np.where(miss, np.nan, t1)

    def support(self, u):
        return np.max(np.asarray(u, dtype=float) @ self.vertices.T, axis=-1)

    def boundary_points(self, n):
        v = self.vertices
        e = np.roll(v, -1, axis=0) - v
        lengths = np.linalg.norm(e, axis=1)
        s = np.arange(n) / n * lengths.sum()
        cum = np.concatenate([[0.0], np.cumsum(lengths)])
        i = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(v) - 1)
        return v[i] + e[i] * ((s - cum[i]) / lengths[i])[:, None]

    def centroid(self) -> np.ndarray:
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        cr = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
        return ((v + w) * cr[:, None]).sum(0) / (6 * self._area)

    def _fan(self):
        c = self.centroid()
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        areas = 0.5 * np.abs((v[:, 0] - c[0]) * (w[:, 1] - c[1]) - (v[:, 1] - c[1]) * (w[:, 0] - c[0]))
        return c, v, w, areas

    def quadrature_nodes(self, resolution):
        c, v, w, areas = self._fan()
        s, ds = _gauss01(resolution, power=3)  # clustered toward the boundary edge
        u, du = _gauss01(resolution)
        S, U = np.meshgrid(s, u, indexing="ij")
        W = (ds[:, None] * du[None, :]) * S
        edge = v[:, None, None, :] * (1 - U[..., None]) + w[:, None, None, :] * U[..., None]
        pts = c + S[..., None] * (edge - c)
        wts = 2 * areas[:, None, None] * W
        return pts.reshape(-1, 2), wts.ravel()

    def sample(self, rng, n):
        lo, hi = self.bbox()
        if self._area / np.prod(hi - lo) >= 0.05:
            return super().sample(rng, n)
        # thin polygons: fan triangulation, triangle picked by area, then uniform in it
        c, v, w, areas = self._fan()
        tri = rng.choice(len(areas), size=n, p=areas / areas.sum())
        r1, r2 = rng.random(n), rng.random(n)
        flip = r1 + r2 > 1
        r1 = np.where(flip, 1 - r1, r1)
        r2 = np.where(flip, 1 - r2, r2)
        return c + r1[:, None] * (v[tri] - c) + r2[:, None] * (w[tri] - c)

    def transformed(self, sim):
        return Polygon(sim.apply(self.vertices))


# ---------------------------------------------------------------- radial

@dataclass(frozen=True, eq=False)
class RadialRegion(PlanarRegion):
    """Star-shaped region r < 1 + amplitude * mu(theta) about the origin."""

    series: FourierSeries
    amplitude: float = 1.0
    kind = "radial_fourier"

    def __post_init__(self):
        if not np.isfinite(self.amplitude):
            raise InvalidRegionError("amplitude must be finite")
        th = 2 * np.pi * np.arange(CONVEXITY_GRID) / CONVEXITY_GRID
        r = self.radius(th)
        if np.min(r) <= 0:
            raise InvalidRegionError("radial function must be positive")
        r1 = self.amplitude * self.series.evaluate(th, 1)
        r2 = self.amplitude * self.series.evaluate(th, 2)
        curv = r * r + 2 * r1 * r1 - r * r2
        if np.min(curv) < -1e-12:
            raise InvalidRegionError("radial region is not convex")

    @classmethod
    def from_coefficients(cls, cos: Sequence[float], sin: Sequence[float] = (), amplitude: float = 1.0):
        return cls(FourierSeries(cos, sin), amplitude)

    @classmethod
    def from_function(cls, g, n: int = 1024, tail_tol: float = 1e-16) -> "RadialRegion":
        """Radial region r = 1 + g(theta) from a callable, trimming negligible high modes."""
        th = 2 * np.pi * np.arange(n) / n
        return cls.from_samples(np.asarray(g(th), dtype=float), tail_tol)

    @classmethod
    def from_samples(cls, g_samples, tail_tol: float = 1e-16) -> "RadialRegion":
        g = np.asarray(g_samples, dtype=float)
        full = fourier_decompose(g, g.size // 4)
        mag = np.maximum(np.abs(full.cos[1:]), np.abs(full.sin))
        big = np.flatnonzero(mag > tail_tol)
        K = int(big[-1]) + 1 if big.size else 0
        return cls(FourierSeries(full.cos[: K + 1], full.sin[:K]), 1.0)

    @property
    def deviation(self) -> FourierSeries:
        """The radial deviation g = r - 1 as a series."""
        return self.series.scaled(self.amplitude)

    def radius(self, theta, deriv: int = 0):
        val = self.amplitude * self.series.evaluate(theta, deriv)
        return val + 1.0 if deriv == 0 else val

    def _rmax(self) -> float:
        return 1.0 + abs(self.amplitude) * (np.sum(np.abs(self.series.cos)) + np.sum(np.abs(self.series.sin)))

    def contains(self, pts):
        pts = np.asarray(pts, dtype=float)
        return np.hypot(pts[..., 0], pts[..., 1]) <= self.radius(np.arctan2(pts[..., 1], pts[..., 0]))

    def bbox(self):
        r = self._rmax()
        return np.array([-r, -r]), np.array([r, r])

    def area(self):
        c0 = self.series.cos[0]
        return float(np.pi + 2 * np.pi * self.amplitude * c0 + 0.5 * (self.amplitude * self.series.l2_norm()) ** 2)

    def perimeter(self):
        n = max(CONVEXITY_GRID, 32 * (self.series.K + 1))
        th = 2 * np.pi * np.arange(n) / n
        return float(np.mean(np.hypot(self.radius(th), self.radius(th, 1))) * 2 * np.pi)

    def boundary_point(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self.radius(theta)[..., None] * np.stack([np.cos(theta), np.sin(theta)], -1)

    def boundary_points(self, n):
        return self.boundary_point(2 * np.pi * np.arange(n) / n)

    def support(self, u, n: int = 8192):
        pts = self.boundary_points(n)
        return np.max(np.asarray(u, dtype=float) @ pts.T, axis=-1)

    def _exit(self, z, e):
        """Bracketed Newton for |z + rho e| = R(arg(z + rho e)); z strictly inside, |e| = 1."""
        zx, zy, ex, ey = np.broadcast_arrays(z[..., 0], z[..., 1], e[..., 0], e[..., 1])
        shape = zx.shape
        zx, zy, ex, ey = (np.array(a, dtype=float).ravel() for a in (zx, zy, ex, ey))
        b = zx * ex + zy * ey
        c = zx * zx + zy * zy
        # initial guess: exit from the circle of radius R at the rough exit angle
        r0 = self.radius(np.arctan2(zy + ey * (1 - b), zx + ex * (1 - b)))
        rho = -b + np.sqrt(np.maximum(b * b - c + r0 * r0, 0.0))
        lo = np.zeros_like(rho)
        hi = np.sqrt(c) + 1.01 * self._rmax() + 1e-12
        out = np.full(rho.size, np.nan)
        idx = np.arange(rho.size)
        inside = np.hypot(zx, zy) < self.radius(np.arctan2(zy, zx))
        out[~inside] = np.nan
        keep = inside
        idx, rho, lo, hi = idx[keep], rho[keep], lo[keep], hi[keep]
        zx, zy, ex, ey = zx[keep], zy[keep], ex[keep], ey[keep]
        for _ in range(200):
            if idx.size == 0:
                break
            x = zx + rho * ex
            y = zy + rho * ey
            r = np.hypot(x, y)
            ph = np.arctan2(y, x)
            F = r - self.radius(ph)
            dF = (x * ex + y * ey) / r - self.radius(ph, 1) * (x * ey - y * ex) / (r * r)
            step = F / dF
            done = np.abs(step) <= 1e-13 * (1 + rho)
            out[idx[done]] = (rho - step)[done]
            neg = F < 0
            lo = np.where(neg, rho, lo)
            hi = np.where(neg, hi, rho)
            new = rho - step
            new = np.where((new > lo) & (new < hi), new, 0.5 * (lo + hi))
            keep = ~done
            idx, rho, lo, hi = idx[keep], new[keep], lo[keep], hi[keep]
            zx, zy, ex, ey = zx[keep], zy[keep], ex[keep], ey[keep]
        else:
            raise ConvergenceError("radial ray exit did not converge")
        return out.reshape(shape)

    def line_clip(self, p, d):
        """Chord through an interior point p; nan for points outside the region."""
        p = np.asarray(p, dtype=float)
        d = np.asarray(d, dtype=float)
        nd = np.linalg.norm(d, axis=-1)
        e = d / nd[..., None]
        t1 = self._exit(p, e) / nd
        t0 = -self._exit(p, -e) / nd
        return t0, t1

    def ray_exit(self, z, alpha):
        alpha = np.asarray(alpha, dtype=float)
        e = np.stack([np.cos(alpha), np.sin(alpha)], axis=-1)
        return self._exit(np.asarray(z, dtype=float), e)

    def quadrature_nodes(self, resolution):
        return _polar_nodes(self.radius, resolution)


# ---------------------------------------------------------------- similar copy

@dataclass(frozen=True, eq=False)
class SimilarRegion(PlanarRegion):
    """The image of a base region under a similarity."""

    base: PlanarRegion
    sim: Similarity
    kind = "similar"

    def __post_init__(self):
        if isinstance(self.base, SimilarRegion):
            object.__setattr__(self, "sim", self.sim.compose(self.base.sim))
            object.__setattr__(self, "base", self.base.base)
        object.__setattr__(self, "_inv", self.sim.inverse())

    def contains(self, pts):
        return self.base.contains(self._inv.apply(pts))

    def bbox(self):
        lo, hi = self.base.bbox()
        corners = np.array([[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]])
        img = self.sim.apply(corners)
        return img.min(0), img.max(0)

    def area(self):
        return self.base.area() * self.sim.scale ** 2

    def perimeter(self):
        return self.base.perimeter() * self.sim.scale

    def line_clip(self, p, d):
        return self.base.line_clip(self._inv.apply(p), self._inv.apply_vector(d))

    def support(self, u):
        u = np.asarray(u, dtype=float)
        ub = u @ self.sim.matrix  # rotate back, carries the scale
        return self.base.support(ub / np.linalg.norm(ub, axis=-1, keepdims=True)) * self.sim.scale \
            + u @ np.asarray(self.sim.shift)

    def boundary_point(self, theta):
        return self.sim.apply(self.base.boundary_point(theta))

    def boundary_points(self, n):
        return self.sim.apply(self.base.boundary_points(n))

    def quadrature_nodes(self, resolution):
        pts, w = self.base.quadrature_nodes(resolution)
        return self.sim.apply(pts), w * self.sim.scale ** 2

    def sample(self, rng, n):
        return self.sim.apply(self.base.sample(rng, n))

    def transformed(self, sim):
        return SimilarRegion(self.base, sim.compose(self.sim))


# ---------------------------------------------------------------- 3D

def real_sph_harm(l: int, m: int, polar, azimuth):
    """Orthonormal real spherical harmonic Y_lm."""
    if abs(m) > l:
        raise ValueError(f"|m| > l for (l, m) = ({l}, {m})")
    y = sph_harm_y(l, abs(m), polar, azimuth)
    if m > 0:
        return np.sqrt(2) * (-1) ** m * y.real
    if m < 0:
        return np.sqrt(2) * (-1) ** m * y.imag
    return y.real


@dataclass(frozen=True)
class Ball3(Region):
    radius: float = 1.0
    center: tuple = (0.0, 0.0, 0.0)
    dim = 3
    kind = "ball3"

    def __post_init__(self):
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise InvalidRegionError("ball radius must be positive")
        c = tuple(float(x) for x in self.center)
        if len(c) != 3 or not np.all(np.isfinite(c)):
            raise InvalidRegionError("ball center must be a finite 3-vector")
        object.__setattr__(self, "center", c)

    def contains(self, pts):
        q = np.asarray(pts) - np.asarray(self.center)
        return np.einsum("...i,...i->...", q, q) <= self.radius ** 2

    def bbox(self):
        c = np.asarray(self.center)
        return c - self.radius, c + self.radius

    def measure(self):
        return 4 * np.pi / 3 * self.radius ** 3

    volume = measure


@dataclass(frozen=True)
class PerturbedBall3(Region):
    """r < 1 + amplitude * sum coeff * Y_lm(polar, azimuth)."""

    ylm: tuple = field(default_factory=tuple)
    amplitude: float = 0.0
    dim = 3
    kind = "perturbed_ball3"

    def __post_init__(self):
        terms = tuple((int(l), int(m), float(c)) for l, m, c in self.ylm)
        for l, m, c in terms:
            if l < 0 or abs(m) > l or not np.isfinite(c):
                raise InvalidRegionError(f"invalid harmonic term {(l, m, c)}")
        object.__setattr__(self, "ylm", terms)
        pol, az, _ = self._grid(64)
        if np.min(self.radius(pol, az)) <= 0:
            raise InvalidRegionError("perturbed ball radial function must be positive")

    def radius(self, polar, azimuth):
        val = np.zeros(np.broadcast(polar, azimuth).shape)
        for l, m, c in self.ylm:
            val = val + c * real_sph_harm(l, m, polar, azimuth)
        return 1.0 + self.amplitude * val

    @staticmethod
    def _grid(n):
        x, w = leggauss(n)
        az = 2 * np.pi * np.arange(2 * n) / (2 * n)
        P, A = np.meshgrid(np.arccos(x), az, indexing="ij")
        W = np.outer(w, np.full(2 * n, 2 * np.pi / (2 * n)))
        return P, A, W

    def _rmax(self):
        bound = sum(abs(c) * np.sqrt((2 * l + 1) / (4 * np.pi)) * (np.sqrt(2) if m else 1.0)
                    for l, m, c in self.ylm)
        return 1.0 + abs(self.amplitude) * bound

    def contains(self, pts):
        pts = np.asarray(pts, dtype=float)
        r = np.linalg.norm(pts, axis=-1)
        polar = np.arccos(np.clip(pts[..., 2] / np.where(r > 0, r, 1.0), -1, 1))
        az = np.arctan2(pts[..., 1], pts[..., 0])
        return r <= self.radius(polar, az)

    def bbox(self):
        r = self._rmax()
        return np.full(3, -r), np.full(3, r)

    def measure(self):
        lmax = max([l for l, _, _ in self.ylm] + [0])
        P, A, W = self._grid(max(32, 2 * lmax + 8))
        return float(np.sum(W * self.radius(P, A) ** 3) / 3)

    volume = measure
