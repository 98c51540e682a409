"""Monte Carlo and quadrature estimators of p(S) and of the largest-angle CDF."""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .disk import acute_locus_area_in_disk
from .errors import InvalidRegionError
from .geometry.regions import Disk, PlanarRegion, Region
from .geometry.triangles import acute_mask, largest_angles

DEFAULT_SEED = 20240917
CHUNK = 1 << 16  # triples per RNG stream; fixed so results do not depend on threads
DEFAULT_RESOLUTION = 24
THREADS_ENV = "ACUTEPROB_THREADS"


@dataclass(frozen=True)
class Estimate:
    value: float
    std_err: float
    n_samples: int
    seed: int
    wall_time: float = 0.0

    def as_dict(self) -> dict:
        return {"value": self.value, "std_err": self.std_err, "n": self.n_samples, "seed": self.seed}


@dataclass(frozen=True, eq=False)
class CdfEstimate:
    phi: np.ndarray
    values: tuple  # Estimate per grid point

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([e.value for e in self.values])


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"{THREADS_ENV} must be >= 1")
        return n
    return 1


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    """Counter-based stream for one chunk of triples."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def sample_uniform(region: Region, rng: np.random.Generator, n: int = 1) -> np.ndarray:
    """n uniform points in the region, shape (n, dim)."""
    return region.sample(rng, n)


def _chunks(n: int):
    k = (n + CHUNK - 1) // CHUNK
    return [(i, min(CHUNK, n - i * CHUNK)) for i in range(k)]


def _triangle_angles(region: Region, seed: int, chunk: int, m: int) -> np.ndarray:
    rng = chunk_rng(seed, chunk)
    pts = region.sample(rng, 3 * m).reshape(m, 3, region.dim)
    return largest_angles(pts[:, 0], pts[:, 1], pts[:, 2])


def _map_chunks(fn, n: int, threads: int | None):
    threads = threads or default_threads()
    jobs = _chunks(n)
    if threads == 1 or len(jobs) == 1:
        return [fn(c, m) for c, m in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda job: fn(*job), jobs))


def _check_n(n_samples: int):
    if int(n_samples) < 1:
        raise ValueError("n_samples must be >= 1")


def estimate_p(region: Region, n_samples: int, seed: int = DEFAULT_SEED,
               threads: int | None = None) -> Estimate:
    """Fraction of acute triangles among n_samples independent uniform triples."""
    _check_n(n_samples)
    t0 = time.perf_counter()
    counts = _map_chunks(lambda c, m: int(np.count_nonzero(acute_mask(_triangle_angles(region, seed, c, m)))),
                         n_samples, threads)
    p = sum(counts) / n_samples
    return Estimate(p, float(np.sqrt(p * (1 - p) / n_samples)), int(n_samples), int(seed),
                    time.perf_counter() - t0)


def estimate_F(region: Region, phi_grid, n_samples: int, seed: int = DEFAULT_SEED,
               threads: int | None = None) -> CdfEstimate:
    """P(largest angle <= phi) on a sorted grid, from one shared set of triples."""
    _check_n(n_samples)
    phi = np.asarray(phi_grid, dtype=float).ravel()
    if phi.size == 0:
        raise ValueError("phi grid is empty")
    if np.any(np.diff(phi) < 0):
        raise ValueError("phi grid must be sorted")
    if phi[0] < np.pi / 3 - 1e-12 or phi[-1] > np.pi + 1e-12:
        raise ValueError("phi grid must lie in [pi/3, pi]")
    t0 = time.perf_counter()

    def count(c, m):
        ang = np.sort(_triangle_angles(region, seed, c, m))
        # at phi = pi/2 use the acute/right tie-break so F(pi/2) is exactly p
        below = np.searchsorted(ang, phi, side="right")
        half = np.isclose(phi, np.pi / 2, rtol=0, atol=1e-15)
        if np.any(half):
            below[half] = int(np.count_nonzero(acute_mask(ang)))
        below[phi >= np.pi] = m
        return below

    counts = np.sum(_map_chunks(count, n_samples, threads), axis=0)
    wall = time.perf_counter() - t0
    vals = tuple(Estimate(float(k / n_samples), float(np.sqrt(k / n_samples * (1 - k / n_samples) / n_samples)),
                          int(n_samples), int(seed), wall) for k in counts)
    return CdfEstimate(phi, vals)


# ---------------------------------------------------------------- quadrature

def _kernel_hat(n: int) -> np.ndarray:
    """DFT of the indicator of angular separation >= pi/2 on a periodic grid of n directions."""
    k = np.fft.rfftfreq(n, 1 / n)
    out = np.empty(k.size)
    out[0] = 0.5
    out[1:] = -np.sin(k[1:] * np.pi / 2) / (np.pi * k[1:])
    return out


def _obtuse_pair_mass(rho: np.ndarray) -> np.ndarray:
    """Measure of pairs (X, Y) in S with angle X z Y >= pi/2, from ray lengths rho(z, alpha).

    In polar coordinates about z each ray carries mass rho^2/2, so the measure is
    a quadratic form of the ray masses against the separation indicator,
    evaluated spectrally over the direction grid.
    """
    n = rho.shape[-1]
    W = np.fft.rfft(0.5 * rho ** 2, axis=-1) / n
    mult = np.full(W.shape[-1], 2.0)
    mult[0] = 1.0
    if n % 2 == 0:
        mult[-1] = 1.0
    return (2 * np.pi) ** 2 * np.sum(mult * _kernel_hat(n) * np.abs(W) ** 2, axis=-1)


def _quadrature_sizes(resolution: int):
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    n_dir = 1 << int(np.ceil(np.log2(16 * resolution)))
    return n_dir


def quadrature_p(region: Region, resolution: int = DEFAULT_RESOLUTION, method: str = "rays") -> float:
    """Deterministic p(S) for a planar region.

    method="rays": p = 1 - 3 P(angle at a fixed vertex >= pi/2); for each
    quadrature node z the mass of obtuse-at-z pairs is integrated exactly
    along rays from z. method="locus" (disk only): integrate the closed-form
    acute-locus area over pairs with tensor Gauss-Legendre.
    """
    if region.dim != 2:
        raise InvalidRegionError("quadrature_p handles planar regions only")
    if method == "locus":
        return _locus_quadrature_disk(region, resolution)
    if method != "rays":
        raise ValueError(f"unknown method {method!r}")
    region: PlanarRegion
    n_dir = _quadrature_sizes(resolution)
    nodes, w = region.quadrature_nodes(resolution)
    alpha = 2 * np.pi * np.arange(n_dir) / n_dir
    block = max(1, (1 << 21) // n_dir)
    total = 0.0
    for i in range(0, len(w), block):
        rho = region.ray_exit(nodes[i:i + block, None, :], alpha[None, :])
        total += float(np.dot(w[i:i + block], _obtuse_pair_mass(rho)))
    return 1.0 - 3.0 * total / region.area() ** 3


def _locus_quadrature_disk(region: Region, resolution: int) -> float:
    if not isinstance(region, Disk):
        raise InvalidRegionError("the locus method is implemented for disks only")
    n = resolution
    # X = (r, 0) by rotation symmetry; Y in polar coordinates, split at the singular ray
    # through X and at |Y| = r to keep each panel smooth.
    r, wr = leggauss(n)
    r = (r + 1) / 2
    wr = wr / 2
    g, wg = leggauss(n)
    total = 0.0
    for ri, wri in zip(r, wr):
        inner = 0.0
        for lo, hi in ((0.0, ri), (ri, 1.0)):
            rho = lo + (hi - lo) * (g + 1) / 2
            wrho = (hi - lo) / 2 * wg
            for plo, phi_hi in ((0.0, np.pi),):
                psi = plo + (phi_hi - plo) * (g + 1) / 2
                wpsi = (phi_hi - plo) / 2 * wg
                RH, PS = np.meshgrid(rho, psi, indexing="ij")
                Y = np.stack([RH * np.cos(PS), RH * np.sin(PS)], -1)
                X = np.broadcast_to([ri, 0.0], Y.shape)
                A = acute_locus_area_in_disk(X, Y)
                inner += 2 * np.sum(A * RH * np.outer(wrho, wpsi))  # mirror symmetry in psi
        total += wri * ri * 2 * np.pi * inner
    return total / np.pi ** 3
