"""grid_space/grid_space.py - Public interface, re-exports grid, box sets and their I/O."""
from grid_space.grid_space_core.box_io import (boxset_pgm, grid_from_dict, read_cells_csv, read_pgm,
    write_cells_csv, write_pgm)
from grid_space.grid_space_core.box_set import (BoxSet, boundary, cells_meeting_boxes, chessboard_distance,
    connected_parts, cover_predicate, cover_region, excess, fatten, hausdorff, hausdorff_to_points, paint_boxes)
from grid_space.grid_space_core.grid import Grid
from grid_space.grid_space_core.regions import Annulus, Disc, Rect, region_from_spec

__all__ = ["boxset_pgm", "grid_from_dict", "read_cells_csv", "read_pgm", "write_cells_csv", "write_pgm",
           "BoxSet", "boundary", "cells_meeting_boxes", "chessboard_distance", "connected_parts",
           "cover_predicate", "cover_region", "excess", "fatten", "hausdorff", "hausdorff_to_points",
           "paint_boxes", "Grid", "Annulus", "Disc", "Rect", "region_from_spec"]
