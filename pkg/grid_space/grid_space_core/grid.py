"""grid_space/grid_space_core/grid.py - Uniform 2^depth x 2^depth box grid over a compact region.
INPUT: bounds, depth, optional membership region | OUTPUT: retained cells + index helpers

Cells are addressed three ways:
  (ix, iy)    integer coordinates, iy grows with the imaginary axis
  flat id     iy * n + ix
  position    index into the sorted array of retained flat ids (0..N-1)
BoxSets store masks over positions; rasters are n x n arrays indexed [iy, ix].
"""
from typing import Optional, Tuple

import numpy as np

from config.settings import CELL_SNAP_TOL, MAX_DEPTH, MAX_RASTER_CELLS
from map_expr.map_expr_core.interval import BoxArray, IntervalBox2
from utils.budget import check_cap
from utils.errors import ConfigError


class Grid:
    def __init__(self, bounds: IntervalBox2, depth: int, region=None):
        if not isinstance(depth, (int, np.integer)) or depth < 0 or depth > MAX_DEPTH:
            raise ConfigError(f"depth must be an integer in [0, {MAX_DEPTH}], got {depth!r}", "depth")
        if not bounds.is_finite or bounds.width <= 0 or bounds.height <= 0:
            raise ConfigError(f"bounds must be finite with positive extent, got {bounds.as_tuple()}", "bounds")
        self.bounds, self.depth, self.region = bounds, int(depth), region
        self.n = 1 << self.depth
        check_cap("grid raster cells", self.n * self.n, MAX_RASTER_CELLS)
        self.cw = bounds.width / self.n
        self.ch = bounds.height / self.n
        iy, ix = np.divmod(np.arange(self.n * self.n, dtype=np.int64), self.n)
        if region is None:
            keep = np.ones(self.n * self.n, dtype=bool)
        else:
            xl, xh, yl, yh = self._edges(ix, iy)
            keep = np.asarray(region.cell_meets(xl, xh, yl, yh, CELL_SNAP_TOL * max(self.cw, self.ch)), dtype=bool)
        self.cells = np.flatnonzero(keep).astype(np.int64)
        self.N = int(self.cells.size)
        self.pos_raster = np.full(self.n * self.n, -1, dtype=np.int64)
        self.pos_raster[self.cells] = np.arange(self.N, dtype=np.int64)
        self.pos_raster = self.pos_raster.reshape(self.n, self.n)
        self.pos_raster.setflags(write=False)
        self.ix = (self.cells % self.n).astype(np.int64)
        self.iy = (self.cells // self.n).astype(np.int64)

    # ── identity ──
    @property
    def key(self) -> Tuple:
        reg = None if self.region is None else tuple(sorted(str(kv) for kv in self.region.to_dict().items()))
        return (self.bounds.as_tuple(), self.depth, reg)

    def __eq__(self, other): return isinstance(other, Grid) and self.key == other.key
    def __hash__(self): return hash(self.key)
    def __repr__(self): return f"Grid(depth={self.depth}, cells={self.N}, bounds={self.bounds.as_tuple()})"

    def to_dict(self) -> dict:
        return {"bounds": list(self.bounds.as_tuple()), "depth": self.depth,
                "membership": None if self.region is None else self.region.to_dict(), "cells": self.N}

    @property
    def cell_diameter(self) -> float: return float(np.hypot(self.cw, self.ch))

    @property
    def cell_area(self) -> float: return self.cw * self.ch

    # ── geometry ──
    def _edges(self, ix, iy):
        x0, y0 = self.bounds.re_lo, self.bounds.im_lo
        return x0 + ix * self.cw, x0 + (ix + 1) * self.cw, y0 + iy * self.ch, y0 + (iy + 1) * self.ch

    def cell_boxes(self, pos: Optional[np.ndarray] = None) -> BoxArray:
        pos = np.arange(self.N) if pos is None else np.asarray(pos, dtype=np.int64)
        xl, xh, yl, yh = self._edges(self.ix[pos].astype(float), self.iy[pos].astype(float))
        return BoxArray(xl, xh, yl, yh)

    def cell_box(self, p: int) -> IntervalBox2:
        return self.cell_boxes(np.array([p])).box(0)

    def centers(self, pos: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
        pos = np.arange(self.N) if pos is None else np.asarray(pos, dtype=np.int64)
        x0, y0 = self.bounds.re_lo, self.bounds.im_lo
        return x0 + (self.ix[pos] + 0.5) * self.cw, y0 + (self.iy[pos] + 0.5) * self.ch

    def locate(self, x, y) -> np.ndarray:
        """Position of the cell containing each point, -1 if outside the retained grid."""
        x, y = np.atleast_1d(np.asarray(x, dtype=float)), np.atleast_1d(np.asarray(y, dtype=float))
        fx = (x - self.bounds.re_lo) / self.cw
        fy = (y - self.bounds.im_lo) / self.ch
        ok = np.isfinite(fx) & np.isfinite(fy) & (fx >= 0) & (fx <= self.n) & (fy >= 0) & (fy <= self.n)
        ix = np.clip(np.floor(np.where(ok, fx, 0)), 0, self.n - 1).astype(np.int64)
        iy = np.clip(np.floor(np.where(ok, fy, 0)), 0, self.n - 1).astype(np.int64)
        return np.where(ok, self.pos_raster[iy, ix], -1)

    def position_of(self, ix: int, iy: int) -> int:
        if not (0 <= ix < self.n and 0 <= iy < self.n): return -1
        return int(self.pos_raster[iy, ix])

    def rect_ranges(self, boxes: BoxArray):
        """Index ranges of raster cells whose closed rectangles meet each closed box.
        Returns (ix0, ix1, iy0, iy1, nonempty), inclusive, clipped to the raster."""
        tol = CELL_SNAP_TOL
        with np.errstate(invalid="ignore", over="ignore"):
            fx0 = (boxes.re_lo - self.bounds.re_lo) / self.cw - 1.0 - tol
            fx1 = (boxes.re_hi - self.bounds.re_lo) / self.cw + tol
            fy0 = (boxes.im_lo - self.bounds.im_lo) / self.ch - 1.0 - tol
            fy1 = (boxes.im_hi - self.bounds.im_lo) / self.ch + tol
        big = float(self.n + 1)
        ix0 = np.ceil(np.clip(fx0, -1.0, big)).astype(np.int64)
        ix1 = np.floor(np.clip(fx1, -1.0, big)).astype(np.int64)
        iy0 = np.ceil(np.clip(fy0, -1.0, big)).astype(np.int64)
        iy1 = np.floor(np.clip(fy1, -1.0, big)).astype(np.int64)
        nonempty = (ix1 >= 0) & (iy1 >= 0) & (ix0 <= self.n - 1) & (iy0 <= self.n - 1) & (ix0 <= ix1) & (iy0 <= iy1)
        ix0, iy0 = np.clip(ix0, 0, self.n - 1), np.clip(iy0, 0, self.n - 1)
        ix1, iy1 = np.clip(ix1, 0, self.n - 1), np.clip(iy1, 0, self.n - 1)
        return ix0, ix1, iy0, iy1, nonempty
