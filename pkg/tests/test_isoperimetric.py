import numpy as np
import pytest
from conftest import random_convex_polygon

from acuteprob.disk import P_DISK
from acuteprob.errors import InvalidRegionError
from acuteprob.estimator import estimate_p
from acuteprob.geometry import Ball3, Disk, Ellipse, Polygon, Similarity, SimilarRegion
from acuteprob.isoperimetric import (THRESHOLD, bound_from_height, cells_for_height, decay_curve,
                                     height_ratio_bound, iso_ratio, nonacute_lower_bound, partition_bound,
                                     threshold_check)


def test_iso_ratio_examples():
    assert iso_ratio(Disk()) == pytest.approx(4 * np.pi, rel=1e-14)
    assert iso_ratio(Polygon.rectangle(1, 1)) == pytest.approx(16, rel=1e-14)
    assert iso_ratio(Polygon.rectangle(1, 0.005)) == pytest.approx(2.01**2 / 0.005, rel=1e-12)
    assert iso_ratio(Ellipse(1, 0.5)) > 4 * np.pi


def test_iso_ratio_rejects_ball():
    with pytest.raises(InvalidRegionError):
        iso_ratio(Ball3())


def test_nonacute_lower_bound():
    assert nonacute_lower_bound(30) == pytest.approx(26 * 27 * 28 / 30**3, rel=1e-15)
    assert nonacute_lower_bound(4) == 0.0
    assert nonacute_lower_bound(1) == 0.0


def test_bound_examples():
    rep = bound_from_height(1 / 60)
    assert rep.N == 30
    assert rep.nonacute_lb == pytest.approx(0.728, abs=1e-15)
    assert rep.p_upper == pytest.approx(0.272, abs=1e-15)
    assert rep.beats_disk
    disk_like = bound_from_height(0.5)
    assert disk_like.N == 1 and disk_like.p_upper == 1.0 and not disk_like.beats_disk


def test_report_invariants():
    for h in np.geomspace(1e-4, 0.5, 40):
        rep = bound_from_height(h)
        assert rep.p_upper == pytest.approx(1 - rep.nonacute_lb, abs=1e-15)
        assert rep.beats_disk == (rep.p_upper < P_DISK)
        assert rep.N == cells_for_height(h) == int(np.floor(1 / (2 * h) + 1e-9))


def test_rectangle_partition():
    rep = partition_bound(Polygon.rectangle(1, 0.005))
    assert rep.N == 100
    assert rep.p_upper == pytest.approx(1 - 96 * 97 * 98 / 1e6, abs=1e-12)
    assert rep.beats_disk


def test_partition_scale_invariant():
    rect = Polygon.rectangle(1, 0.005)
    moved = SimilarRegion(rect, Similarity(7.0, 1.1, (3.0, -2.0)))
    a, b = partition_bound(rect), partition_bound(moved)
    assert a.N == b.N
    assert b.hbar == pytest.approx(a.hbar, rel=1e-9)


def test_threshold_examples():
    assert THRESHOLD == pytest.approx(512.5333, abs=1e-4)
    thin = Polygon.rectangle(1, 0.005)
    assert threshold_check(thin) and partition_bound(thin).beats_disk
    assert not threshold_check(Disk())
    assert iso_ratio(Polygon.rectangle(1, 0.02)) == pytest.approx(208.08, abs=1e-9)
    assert not threshold_check(Polygon.rectangle(1, 0.02))


@pytest.mark.parametrize("h", [0.0015, 0.002, 0.003, 0.004, 0.005])
def test_threshold_implies_beats_disk(h):
    for region in (Polygon.rectangle(1, h), Ellipse(1, h), SimilarRegion(Polygon.rectangle(1, h), Similarity(2, 0.3))):
        if threshold_check(region):
            assert partition_bound(region).beats_disk


@pytest.mark.parametrize("seed", range(20))
def test_ratio_below_height_bound(seed):
    rng = np.random.default_rng(seed)
    poly = random_convex_polygon(rng)
    rep = partition_bound(poly)
    assert rep.ratio <= height_ratio_bound(rep.hbar) + 1e-6


def test_ratio_below_height_bound_thin_shapes():
    for region in (Polygon.rectangle(1, 0.01), Ellipse(1, 0.01), Disk()):
        rep = partition_bound(region)
        assert rep.ratio <= height_ratio_bound(rep.hbar) + 1e-6


def test_soundness_random_polygons():
    rng = np.random.default_rng(7)
    for i in range(50):
        poly = random_convex_polygon(rng)
        if i % 2:
            # squash every other polygon so the bound is not vacuous
            v = poly.vertices * np.array([1.0, rng.uniform(0.003, 0.03)])
            poly = Polygon(v)
        est = estimate_p(poly, 100_000, seed=i)
        assert est.value <= partition_bound(poly).p_upper + 4 * est.std_err


@pytest.mark.slow
def test_ladder():
    rows, slope = decay_curve(n_samples=10**6)
    uppers = [r.p_upper for r in rows]
    p = [r.p_mc for r in rows]
    assert all(np.diff(uppers) <= 0)
    assert all(np.diff(p) < 0)
    for r in rows:
        assert r.p_mc <= r.p_upper + 4 * r.std_err
    assert slope <= -0.8
