"""Strict JSON (de)serialization of region descriptions."""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import InvalidRegionError
from ..series import FourierSeries
from .regions import Ball3, Disk, Ellipse, PerturbedBall3, Polygon, RadialRegion, Region

_FIELDS = {
    "disk": ({"type"}, {"radius", "center"}),
    "ellipse": ({"type", "a", "b"}, set()),
    "polygon": ({"type", "vertices"}, set()),
    "radial_fourier": ({"type", "cos"}, {"sin", "amplitude"}),
    "ball3": ({"type"}, {"radius", "center"}),
    "perturbed_ball3": ({"type", "ylm"}, {"amplitude"}),
}


def region_from_dict(data: dict) -> Region:
    if not isinstance(data, dict):
        raise InvalidRegionError("region description must be a JSON object")
    kind = data.get("type")
    if kind not in _FIELDS:
        raise InvalidRegionError(f"unknown region type {kind!r}")
    required, optional = _FIELDS[kind]
    keys = set(data)
    if missing := required - keys:
        raise InvalidRegionError(f"{kind}: missing fields {sorted(missing)}")
    if unknown := keys - required - optional:
        raise InvalidRegionError(f"{kind}: unknown fields {sorted(unknown)}")
    try:
        if kind == "disk":
            return Disk(float(data.get("radius", 1.0)), tuple(data.get("center", (0.0, 0.0))))
        if kind == "ellipse":
            return Ellipse(float(data["a"]), float(data["b"]))
        if kind == "polygon":
            return Polygon(data["vertices"])
        if kind == "radial_fourier":
            return RadialRegion(FourierSeries(data["cos"], data.get("sin", [])),
                                float(data.get("amplitude", 1.0)))
        if kind == "ball3":
            return Ball3(float(data.get("radius", 1.0)), tuple(data.get("center", (0.0, 0.0, 0.0))))
        return PerturbedBall3(tuple(tuple(t) for t in data["ylm"]), float(data.get("amplitude", 0.0)))
    except InvalidRegionError:
        raise
    except (TypeError, ValueError) as exc:
        raise InvalidRegionError(f"{kind}: {exc}") from exc


def region_to_dict(region: Region) -> dict:
    if isinstance(region, Disk):
        return {"type": "disk", "radius": region.radius, "center": list(region.center)}
    if isinstance(region, Ellipse):
        return {"type": "ellipse", "a": region.a, "b": region.b}
    if isinstance(region, Polygon):
        return {"type": "polygon", "vertices": region.vertices.tolist()}
    if isinstance(region, RadialRegion):
        return {"type": "radial_fourier", "cos": region.series.cos.tolist(),
                "sin": region.series.sin.tolist(), "amplitude": region.amplitude}
    if isinstance(region, Ball3):
        return {"type": "ball3", "radius": region.radius, "center": list(region.center)}
    if isinstance(region, PerturbedBall3):
        return {"type": "perturbed_ball3", "ylm": [list(t) for t in region.ylm],
                "amplitude": region.amplitude}
    raise TypeError(f"cannot serialize {type(region).__name__}")


def load_region(path) -> Region:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidRegionError(f"{path}: not valid JSON ({exc})") from exc
    return region_from_dict(data)


def dump_region(region: Region, path) -> None:
    Path(path).write_text(json.dumps(region_to_dict(region), sort_keys=True, indent=2) + "\n")
