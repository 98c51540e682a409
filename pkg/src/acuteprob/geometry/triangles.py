"""Triangle classification by largest interior angle."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-12


class Kind(str, enum.Enum):
    ACUTE = "acute"
    RIGHT = "right"
    OBTUSE = "obtuse"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class TriangleClass:
    kind: Kind
    largest_angle: float  # nan when degenerate

    @property
    def is_acute(self) -> bool:
        return self.kind is Kind.ACUTE


def _cross_norm(u, v):
    if u.shape[-1] == 2:
        return np.abs(u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0])
    return np.linalg.norm(np.cross(u, v), axis=-1)


def largest_angles(a, b, c) -> np.ndarray:
    """Largest interior angle of each triangle (a[i], b[i], c[i]).

    Angles are computed as atan2(|u x v|, u.v), which is accurate near 0, pi/2
    and pi alike. Collinear triples give pi (or nan if two points coincide).
    """
    a, b, c = (np.asarray(x, dtype=float) for x in (a, b, c))
    ab, ac, bc = b - a, c - a, c - b
    cr = _cross_norm(ab, ac)  # the same |cross| serves all three vertices
    ang_a = np.arctan2(cr, np.einsum("...i,...i->...", ab, ac))
    ang_b = np.arctan2(cr, -np.einsum("...i,...i->...", ab, bc))
    ang_c = np.arctan2(cr, np.einsum("...i,...i->...", ac, bc))
    return np.maximum(np.maximum(ang_a, ang_b), ang_c)


def acute_mask(largest, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Acute iff the largest angle is below pi/2 - tol; right triangles are not acute."""
    return largest < np.pi / 2 - tol


def classify_triangle(p1, p2, p3, tol: float = DEFAULT_TOL) -> TriangleClass:
    pts = [np.asarray(p, dtype=float) for p in (p1, p2, p3)]
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    if not all(np.all(np.isfinite(p)) for p in pts):
        raise ValueError("points must be finite")
    # a canonical vertex order makes the result exactly independent of labeling
    a, b, c = sorted(pts, key=lambda p: tuple(p))
    sides = [np.linalg.norm(b - a), np.linalg.norm(c - a), np.linalg.norm(c - b)]
    longest = max(sides)
    if min(sides) <= tol * longest or longest == 0.0:
        return TriangleClass(Kind.DEGENERATE, float("nan"))
    if _cross_norm(b - a, c - a) <= tol * longest ** 2:
        return TriangleClass(Kind.DEGENERATE, float("nan"))
    big = float(largest_angles(a, b, c))
    if abs(big - np.pi / 2) <= tol:
        kind = Kind.RIGHT
    elif big < np.pi / 2:
        kind = Kind.ACUTE
    else:
        kind = Kind.OBTUSE
    return TriangleClass(kind, big)
