"""grid_space/grid_space_core/regions.py - Membership regions for trimming grids.
INPUT: cell rectangles or points as arrays | OUTPUT: boolean masks

Each region answers three vectorized questions: does a point lie in it,
does a closed cell rectangle meet it, does a cell lie wholly inside it.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from utils.errors import ConfigError


def _gap(lo, hi, c):
    """Distance from c to the interval [lo, hi] along one axis."""
    return np.maximum(np.maximum(lo - c, c - hi), 0.0)


def _far(lo, hi, c):
    return np.maximum(np.abs(lo - c), np.abs(hi - c))


@dataclass(frozen=True)
class Disc:
    radius: float = 1.0
    cx: float = 0.0
    cy: float = 0.0
    kind = "disc"

    def contains(self, x, y):
        return np.hypot(np.asarray(x) - self.cx, np.asarray(y) - self.cy) <= self.radius

    def cell_meets(self, xl, xh, yl, yh, tol=0.0):
        return np.hypot(_gap(xl, xh, self.cx), _gap(yl, yh, self.cy)) <= self.radius + tol

    def cell_inside(self, xl, xh, yl, yh):
        return np.hypot(_far(xl, xh, self.cx), _far(yl, yh, self.cy)) <= self.radius

    def to_dict(self): return {"kind": "disc", "radius": self.radius, "center": [self.cx, self.cy]}


@dataclass(frozen=True)
class Annulus:
    inner: float
    outer: float
    cx: float = 0.0
    cy: float = 0.0
    kind = "annulus"

    def contains(self, x, y):
        r = np.hypot(np.asarray(x) - self.cx, np.asarray(y) - self.cy)
        return (r >= self.inner) & (r <= self.outer)

    def cell_meets(self, xl, xh, yl, yh, tol=0.0):
        near = np.hypot(_gap(xl, xh, self.cx), _gap(yl, yh, self.cy))
        far = np.hypot(_far(xl, xh, self.cx), _far(yl, yh, self.cy))
        return (near <= self.outer + tol) & (far >= self.inner - tol)

    def cell_inside(self, xl, xh, yl, yh):
        near = np.hypot(_gap(xl, xh, self.cx), _gap(yl, yh, self.cy))
        far = np.hypot(_far(xl, xh, self.cx), _far(yl, yh, self.cy))
        return (near >= self.inner) & (far <= self.outer)

    def to_dict(self): return {"kind": "annulus", "inner": self.inner, "outer": self.outer, "center": [self.cx, self.cy]}


@dataclass(frozen=True)
class Rect:
    x0: float
    x1: float
    y0: float
    y1: float
    kind = "rect"

    def contains(self, x, y):
        x, y = np.asarray(x), np.asarray(y)
        return (x >= self.x0) & (x <= self.x1) & (y >= self.y0) & (y <= self.y1)

    def cell_meets(self, xl, xh, yl, yh, tol=0.0):
        return (xl <= self.x1 + tol) & (xh >= self.x0 - tol) & (yl <= self.y1 + tol) & (yh >= self.y0 - tol)

    def cell_inside(self, xl, xh, yl, yh):
        return (xl >= self.x0) & (xh <= self.x1) & (yl >= self.y0) & (yh <= self.y1)

    def to_dict(self): return {"kind": "rect", "bounds": [self.x0, self.x1, self.y0, self.y1]}


Region = object  # Disc | Annulus | Rect


def region_from_spec(spec, bounds=None, field: str = "membership") -> Optional[object]:
    """Accepts None, "disc", "rect" or a dict with a `kind` key."""
    if spec is None: return None
    if isinstance(spec, str):
        if spec == "disc": return Disc()
        if spec == "rect":
            if bounds is None: return None
            return Rect(*bounds)
        raise ConfigError(f"unknown membership {spec!r} (expected 'disc' or 'rect')", field)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError("membership must be a name or an object with 'kind'", field)
    kind = spec["kind"]
    center = spec.get("center", [0.0, 0.0])
    try:
        if kind == "disc":
            return Disc(float(spec.get("radius", 1.0)), float(center[0]), float(center[1]))
        if kind == "annulus":
            return Annulus(float(spec["inner"]), float(spec["outer"]), float(center[0]), float(center[1]))
        if kind == "rect":
            b = spec.get("bounds", bounds)
            return Rect(*(float(v) for v in b))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ConfigError(f"malformed {kind} region: {exc}", field) from exc
    raise ConfigError(f"unknown region kind {kind!r}", field)
