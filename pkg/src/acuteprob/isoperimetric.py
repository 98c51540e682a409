"""Upper bounds on p(S) for regions with a large isoperimetric ratio."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .disk import P_DISK
from .errors import InvalidRegionError
from .estimator import DEFAULT_SEED, estimate_p
from .geometry.metrics import height_profile, longest_segment_frame
from .geometry.regions import PlanarRegion, Polygon, Region

THRESHOLD = 7688 / 15
DEFAULT_LADDER = (0.05, 0.02, 0.01, 0.005)


def iso_ratio(region: Region) -> float:
    """perimeter^2 / area."""
    if region.dim != 2:
        raise InvalidRegionError("iso_ratio needs a planar region")
    a = region.area()
    if not a > 0:
        raise InvalidRegionError("degenerate region")
    return float(region.perimeter() ** 2 / a)


def nonacute_lower_bound(N: int) -> float:
    """Fraction of cell triples (out of N^3) with no two cells equal or adjacent."""
    return (N - 4) * (N - 3) * (N - 2) / N ** 3 if N >= 5 else 0.0


def cells_for_height(hbar: float) -> int:
    # the 1e-9 guard keeps exact ratios such as 1/(2*0.005) = 100 from rounding down
    return int(np.floor(1 / (2 * hbar) + 1e-9))


@dataclass(frozen=True)
class IsoBoundReport:
    ratio: float
    hbar: float
    N: int
    nonacute_lb: float
    p_upper: float
    beats_disk: bool

    def as_dict(self) -> dict:
        return asdict(self)


def bound_from_height(hbar: float, ratio: float = float("nan")) -> IsoBoundReport:
    N = cells_for_height(hbar)
    lb = nonacute_lower_bound(N)
    p_upper = 1.0 - lb
    return IsoBoundReport(ratio, hbar, N, lb, p_upper, bool(p_upper < P_DISK))


def partition_bound(region: PlanarRegion, grid_n: int = 4096) -> IsoBoundReport:
    """Partition the framed region into N vertical slabs of width 1/N; a triple in
    three pairwise non-adjacent slabs is obtuse, which bounds p(S) from above."""
    framed, _ = longest_segment_frame(region)
    hbar = height_profile(framed, grid_n).hbar
    return bound_from_height(hbar, iso_ratio(region))


def threshold_check(region: PlanarRegion) -> bool:
    """True iff the isoperimetric ratio exceeds 7688/15."""
    return iso_ratio(region) > THRESHOLD


def height_ratio_bound(hbar: float) -> float:
    """Isoperimetric ratio ceiling 8(1 + 2 hbar)^2 / hbar for a framed region of height hbar."""
    return 8 * (1 + 2 * hbar) ** 2 / hbar


@dataclass(frozen=True)
class LadderRow:
    h: float
    ratio: float
    p_mc: float
    std_err: float
    p_upper: float


def decay_curve(heights=DEFAULT_LADDER, n_samples: int = 10**6, seed: int = DEFAULT_SEED,
                threads: int | None = None):
    """Monte Carlo p and partition bound along thin 1 x h rectangles.

    Returns (rows, slope) with slope the least-squares log-log slope of p_mc
    against the isoperimetric ratio over rungs with p_mc > 0 (None if fewer than two).
    """
    rows = []
    for h in heights:
        rect = Polygon.rectangle(1.0, h)
        est = estimate_p(rect, n_samples, seed, threads)
        rep = partition_bound(rect)
        rows.append(LadderRow(float(h), rep.ratio, est.value, est.std_err, rep.p_upper))
    R = np.array([r.ratio for r in rows])
    p = np.array([r.p_mc for r in rows])
    seen = p > 0  # rungs with no acute sample carry no slope information
    slope = float(np.polyfit(np.log(R[seen]), np.log(p[seen]), 1)[0]) if seen.sum() >= 2 else None
    return rows, slope
