"""grid_space/grid_space_core/box_set.py - Cell sets on a Grid and their algebra.
INPUT: Grid + masks / predicates / rectangles | OUTPUT: immutable BoxSets, distances

A BoxSet is a boolean mask over the grid's retained positions. "Open set"
means any BoxSet; "closure" is fatten(., 0), the one-layer neighbourhood.
"""
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from grid_space.grid_space_core.grid import Grid
from map_expr.map_expr_core.interval import BoxArray
from utils.errors import PreconditionError

_EIGHT = np.ones((3, 3), dtype=bool)


class BoxSet:
    __slots__ = ("grid", "mask")

    def __init__(self, grid: Grid, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (grid.N,):
            raise PreconditionError(f"mask shape {mask.shape} does not match grid with {grid.N} cells")
        mask = mask.copy(); mask.setflags(write=False)
        self.grid, self.mask = grid, mask

    # ── constructors ──
    @classmethod
    def empty(cls, grid: Grid) -> "BoxSet": return cls(grid, np.zeros(grid.N, dtype=bool))

    @classmethod
    def full(cls, grid: Grid) -> "BoxSet": return cls(grid, np.ones(grid.N, dtype=bool))

    @classmethod
    def from_positions(cls, grid: Grid, pos: Iterable[int]) -> "BoxSet":
        m = np.zeros(grid.N, dtype=bool)
        pos = np.asarray(list(pos) if not isinstance(pos, np.ndarray) else pos, dtype=np.int64)
        if pos.size and (pos.min() < 0 or pos.max() >= grid.N):
            raise PreconditionError("cell position out of range")
        m[pos] = True
        return cls(grid, m)

    @classmethod
    def from_cells(cls, grid: Grid, ix: Iterable[int], iy: Iterable[int]) -> "BoxSet":
        ix, iy = np.asarray(list(ix), dtype=np.int64), np.asarray(list(iy), dtype=np.int64)
        if ix.size and (ix.min() < 0 or iy.min() < 0 or ix.max() >= grid.n or iy.max() >= grid.n):
            raise PreconditionError("cell coordinates outside the grid")
        pos = grid.pos_raster[iy, ix] if ix.size else np.empty(0, dtype=np.int64)
        if np.any(pos < 0):
            raise PreconditionError("cell not retained by the grid membership region")
        return cls.from_positions(grid, pos)

    @classmethod
    def from_raster(cls, grid: Grid, raster: np.ndarray) -> "BoxSet":
        return cls(grid, np.asarray(raster, dtype=bool)[grid.iy, grid.ix])

    # ── views ──
    @property
    def positions(self) -> np.ndarray: return np.flatnonzero(self.mask)

    @property
    def flat_ids(self) -> np.ndarray: return self.grid.cells[self.mask]

    def ix_iy(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.grid.ix[self.mask], self.grid.iy[self.mask]

    def to_raster(self) -> np.ndarray:
        r = np.zeros((self.grid.n, self.grid.n), dtype=bool)
        r[self.grid.iy[self.mask], self.grid.ix[self.mask]] = True
        return r

    @property
    def area(self) -> float: return len(self) * self.grid.cell_area

    def __len__(self): return int(self.mask.sum())
    def __bool__(self): return bool(self.mask.any())
    def __contains__(self, pos) -> bool: return 0 <= int(pos) < self.grid.N and bool(self.mask[int(pos)])
    def __repr__(self): return f"BoxSet({len(self)}/{self.grid.N} cells)"

    # ── algebra ──
    def _same(self, other: "BoxSet"):
        if self.grid is not other.grid and self.grid != other.grid:
            raise PreconditionError("box sets live on different grids")

    def __or__(self, o): self._same(o); return BoxSet(self.grid, self.mask | o.mask)
    def __and__(self, o): self._same(o); return BoxSet(self.grid, self.mask & o.mask)
    def __sub__(self, o): self._same(o); return BoxSet(self.grid, self.mask & ~o.mask)
    def __xor__(self, o): self._same(o); return BoxSet(self.grid, self.mask ^ o.mask)
    def complement(self) -> "BoxSet": return BoxSet(self.grid, ~self.mask)
    def issubset(self, o) -> bool: self._same(o); return not bool(np.any(self.mask & ~o.mask))
    __le__ = issubset
    def __eq__(self, o): return isinstance(o, BoxSet) and self.grid == o.grid and np.array_equal(self.mask, o.mask)
    __hash__ = None


# ══════════════════════════════════════
# METRIC NEIGHBOURHOODS
# ══════════════════════════════════════

def fatten(s: BoxSet, eps: float) -> BoxSet:
    """All cells whose rectangle lies within Euclidean distance eps of a cell of s.

    Gap distance between cells equals the centre distance to the nearest cell
    of the one-layer dilation, so one dilation plus one distance transform
    handles any eps. eps = 0 yields exactly the 3x3 neighbourhood.
    """
    if eps < 0: raise PreconditionError(f"eps must be >= 0, got {eps}")
    if not s: return BoxSet.empty(s.grid)
    g = s.grid
    near = ndimage.binary_dilation(s.to_raster(), structure=_EIGHT)
    if eps > 0:
        dist = ndimage.distance_transform_edt(~near, sampling=(g.ch, g.cw))
        near = dist <= eps * (1 + 1e-12)
    return BoxSet.from_raster(g, near)


def boundary(s: BoxSet) -> BoxSet:
    """Cells of s with an 8-neighbour outside s; cells off the raster count as outside."""
    if not s: return s
    r = s.to_raster()
    inner = ndimage.binary_erosion(r, structure=_EIGHT, border_value=0)
    return BoxSet.from_raster(s.grid, r & ~inner)


def chessboard_distance(s: BoxSet) -> np.ndarray:
    """Per retained cell, chessboard distance in cells to the nearest cell of s (inf if s empty)."""
    if not s: return np.full(s.grid.N, np.inf)
    d = ndimage.distance_transform_cdt(~s.to_raster(), metric="chessboard").astype(float)
    return d[s.grid.iy, s.grid.ix]


def connected_parts(s: BoxSet) -> List[BoxSet]:
    """8-connected pieces of s, ordered by their smallest position."""
    if not s: return []
    labels, k = ndimage.label(s.to_raster(), structure=_EIGHT)
    lab = labels[s.grid.iy, s.grid.ix]
    parts = [BoxSet(s.grid, lab == j) for j in range(1, k + 1)]
    return sorted(parts, key=lambda p: int(p.positions[0]))


# ══════════════════════════════════════
# HAUSDORFF
# ══════════════════════════════════════

def _centres(s: BoxSet) -> np.ndarray:
    x, y = s.grid.centers(s.positions)
    return np.column_stack([x, y])


def _directed(a: np.ndarray, b: np.ndarray) -> float:
    d, _ = cKDTree(b).query(a, k=1)
    return float(np.max(d))


def hausdorff(a: BoxSet, b: BoxSet) -> float:
    """Symmetric Hausdorff distance on cell centres (error <= one cell diameter)."""
    if not a or not b: raise PreconditionError("hausdorff needs two nonempty box sets")
    a._same(b)
    pa, pb = _centres(a), _centres(b)
    return max(_directed(pa, pb), _directed(pb, pa))


def excess(a: BoxSet, b: BoxSet) -> float:
    """One-sided distance: how far the centres of a reach from b. 0.0 when a is empty."""
    if not b: raise PreconditionError("excess needs a nonempty target set")
    a._same(b)
    return _directed(_centres(a), _centres(b)) if a else 0.0


def hausdorff_to_points(a: BoxSet, pts: np.ndarray) -> float:
    """Hausdorff distance between cell centres of a and an explicit (k, 2) point cloud."""
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    if not a or pts.shape[0] == 0: raise PreconditionError("hausdorff needs nonempty inputs")
    pa = _centres(a)
    return max(_directed(pa, pts), _directed(pts, pa))


# ══════════════════════════════════════
# COVERS
# ══════════════════════════════════════

def cover_predicate(grid: Grid, pred: Callable, samples_per_cell: int, chunk: int = 1 << 20) -> BoxSet:
    """Cells containing at least one k x k lattice sample where pred holds (k = samples_per_cell)."""
    if samples_per_cell < 1: raise PreconditionError("samples_per_cell must be >= 1")
    k = int(samples_per_cell)
    off = (np.arange(k) + 0.5) / k
    ox, oy = np.meshgrid(off, off, indexing="xy")
    ox, oy = ox.ravel(), oy.ravel()
    hit = np.zeros(grid.N, dtype=bool)
    step = max(1, chunk // (k * k))
    for start in range(0, grid.N, step):
        pos = np.arange(start, min(grid.N, start + step))
        bx = grid.bounds.re_lo + (grid.ix[pos][:, None] + ox[None, :]) * grid.cw
        by = grid.bounds.im_lo + (grid.iy[pos][:, None] + oy[None, :]) * grid.ch
        hit[pos] = np.asarray(pred(bx, by), dtype=bool).reshape(pos.size, -1).any(axis=1)
    return BoxSet(grid, hit)


def cover_region(grid: Grid, region, inside: bool = False) -> BoxSet:
    """Cells meeting (or lying wholly inside, if inside=True) a membership region."""
    b = grid.cell_boxes()
    m = region.cell_inside(*b) if inside else region.cell_meets(*b)
    return BoxSet(grid, np.asarray(m, dtype=bool))


def paint_boxes(grid: Grid, boxes: BoxArray, weights: Optional[np.ndarray] = None):
    """Raster count of rectangles meeting each raster cell, via a 2-D difference array.
    Returns (counts [n, n], spill) where spill counts rectangles not inside the grid bounds."""
    n = grid.n
    ix0, ix1, iy0, iy1, ok = grid.rect_ranges(boxes)
    w = np.ones(len(boxes), dtype=np.int64) if weights is None else np.asarray(weights, dtype=np.int64)
    b = grid.bounds
    spill = int(np.count_nonzero(~((boxes.re_lo >= b.re_lo) & (boxes.re_hi <= b.re_hi)
                                   & (boxes.im_lo >= b.im_lo) & (boxes.im_hi <= b.im_hi))))
    diff = np.zeros((n + 1, n + 1), dtype=np.int64)
    ix0, ix1, iy0, iy1, w = ix0[ok], ix1[ok], iy0[ok], iy1[ok], w[ok]
    np.add.at(diff, (iy0, ix0), w)
    np.add.at(diff, (iy0, ix1 + 1), -w)
    np.add.at(diff, (iy1 + 1, ix0), -w)
    np.add.at(diff, (iy1 + 1, ix1 + 1), w)
    counts = diff.cumsum(axis=0).cumsum(axis=1)[:n, :n]
    return counts, spill


def cells_meeting_boxes(grid: Grid, boxes: BoxArray) -> BoxSet:
    """Retained cells whose closed rectangle meets at least one box. Mass outside the grid is dropped."""
    if len(boxes) == 0: return BoxSet.empty(grid)
    counts, _ = paint_boxes(grid, boxes)
    return BoxSet.from_raster(grid, counts > 0)
