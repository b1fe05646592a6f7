"""attractor_engine/attractor_engine_core/image_operator.py - Cell-level images under word families.
INPUT: BoxSet, word-length budget, optional inner word and required generator | OUTPUT: image BoxSets, cell relations
"""
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy import sparse

from config.settings import MAX_GRAPH_EDGES
from grid_space.grid_space_core.box_set import BoxSet, paint_boxes
from grid_space.grid_space_core.grid import Grid
from semigroup.semigroup_core.generator_system import GeneratorSystem, iter_extensions, word_box_images
from semigroup.semigroup_core.words import IDENTITY, Word
from utils.budget import Budget, check_cap


@dataclass
class ImageResult:
    cells: BoxSet
    spill: int      # enclosures reaching outside the grid bounds (mass dropped)
    words: int      # words that contributed
    escaped: int = 0    # raster cells met by enclosures but not retained by the membership


def image_of(grid: Grid, sys: GeneratorSystem, s: BoxSet, max_len: int, inner: Word = IDENTITY,
             require: Optional[int] = None, budget: Optional[Budget] = None, chunk: int = 1 << 15) -> ImageResult:
    """Cells meeting f(inner(b)) for b in s and every f with |f| <= max_len
    (only words containing generator `require` when it is given)."""
    if not s: return ImageResult(BoxSet.empty(grid), 0, 0)
    n = grid.n
    counts = np.zeros((n, n), dtype=np.int64)
    spill, used = 0, set()
    pos = s.positions
    for start in range(0, pos.size, chunk):
        part = pos[start:start + chunk]
        base = word_box_images(sys, inner, grid.cell_boxes(part), budget)
        for w, img in iter_extensions(sys, base, max_len, budget):
            if require is not None and require not in w.indices: continue
            c, sp = paint_boxes(grid, img)
            counts += c; spill += sp; used.add(w)
    hit = counts > 0
    escaped = int(np.count_nonzero(hit & (grid.pos_raster < 0)))
    return ImageResult(BoxSet.from_raster(grid, hit), spill, len(used), escaped)


def generator_relation(grid: Grid, sys: GeneratorSystem, i: int, budget: Optional[Budget] = None) -> sparse.csr_matrix:
    """N x N CSR: row p has the cells meeting the enclosure of g_i(cell p)."""
    img = word_box_images(sys, Word((i,)), grid.cell_boxes(), budget)
    ix0, ix1, iy0, iy1, ok = grid.rect_ranges(img)
    w, h = ix1 - ix0 + 1, iy1 - iy0 + 1
    cnt = np.where(ok, w * h, 0).astype(np.int64)
    check_cap("cell relation entries", int(cnt.sum()), MAX_GRAPH_EDGES)
    rep = np.repeat(np.arange(grid.N), cnt)
    k = np.arange(int(cnt.sum())) - np.repeat(np.cumsum(cnt) - cnt, cnt)
    cx = ix0[rep] + k % w[rep]
    cy = iy0[rep] + k // w[rep]
    cp = grid.pos_raster[cy, cx]
    keep = cp >= 0
    rel = sparse.csr_matrix((np.ones(int(keep.sum()), dtype=np.int8), (rep[keep], cp[keep])), shape=(grid.N, grid.N))
    rel.sum_duplicates()
    return rel


def generator_relations(grid: Grid, sys: GeneratorSystem, budget: Optional[Budget] = None) -> List[sparse.csr_matrix]:
    return [generator_relation(grid, sys, i, budget) for i in range(sys.n)]
