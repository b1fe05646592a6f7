"""attractor_engine/attractor_engine_core/duality.py - Grid-level check of X \\ CR = U (B(A) \\ A).
INPUT: grid, CR BoxSet, attractor records with basins, abelian flag | OUTPUT: DualityReport + difference set
"""
from typing import Sequence, Tuple

import numpy as np

from config.settings import DUALITY_LAYER_CELLS, FAIL, PASS, UNASSERTED
from grid_space.grid_space_core.box_set import BoxSet, boundary, chessboard_distance
from grid_space.grid_space_core.grid import Grid
from models.data_models import AttractorRecord, DualityReport
from utils.errors import PreconditionError
from utils.logger import logger


def basin_minus_attractor_union(grid: Grid, attractors: Sequence[AttractorRecord]) -> BoxSet:
    d = BoxSet.empty(grid)
    for rec in attractors:
        if rec.basin is None: raise PreconditionError("attractor record has no basin yet")
        d = d | (rec.basin - rec.A)
    return d


def duality_report(grid: Grid, cr: BoxSet, attractors: Sequence[AttractorRecord], abelian: bool,
                   layer: int = DUALITY_LAYER_CELLS) -> Tuple[DualityReport, BoxSet, BoxSet]:
    """Returns (report, D, symmetric difference). Without abelian evidence the verdict is UNASSERTED."""
    d = basin_minus_attractor_union(grid, attractors)
    lhs = cr.complement()
    sym = lhs ^ d
    edge = boundary(cr) | boundary(d)
    if not sym:
        worst = 0.0
    elif not edge:
        worst = float("inf")
    else:
        worst = float(np.max(chessboard_distance(edge)[sym.mask]))
    ok = worst <= layer
    verdict = (PASS if ok else FAIL) if abelian else UNASSERTED
    rep = DualityReport(verdict=verdict, abelian=bool(abelian), attractors=len(attractors),
                        complement_cells=len(lhs), union_cells=len(d), sym_diff_cells=len(sym),
                        max_boundary_distance=worst, layer_cells=layer)
    logger.log(f"[DUALITY] |X\\CR|={len(lhs)} |U(B\\A)|={len(d)} |sym|={len(sym)} "
               f"max dist={worst:g} cells -> {verdict}")
    return rep, d, sym


def duality_raster(d: BoxSet, sym: BoxSet) -> np.ndarray:
    """0 = agree outside, 128 = symmetric-difference cell, 255 = agree inside D."""
    r = np.zeros((d.grid.n, d.grid.n), dtype=np.uint8)
    r[d.to_raster()] = 255
    r[sym.to_raster()] = 128
    return r
