import pytest

from acuteprob.geometry import Disk, Polygon, RadialRegion

_ACCEPTANCE = []


def record(criterion: str, passed: bool, detail: str) -> None:
    """Log one acceptance line; printed in the terminal summary regardless of capture."""
    line = f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}"
    _ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture
def unit_disk():
    return Disk()


@pytest.fixture
def unit_square():
    return Polygon.rectangle(1.0, 1.0)


@pytest.fixture
def mode2():
    return RadialRegion.from_coefficients([0, 0, 0.05])


def random_convex_polygon(rng, n=None):
    """Convex hull of random points, counter-clockwise."""
    from scipy.spatial import ConvexHull
    n = n or int(rng.integers(3, 12))
    while True:
        pts = rng.normal(size=(max(n, 3) + 3, 2)) * rng.uniform(0.2, 3.0, size=2)
        hull = ConvexHull(pts)
        v = pts[hull.vertices]  # scipy returns 2D hulls counter-clockwise
        if len(v) >= 3:
            return Polygon(v)
