"""chain_engine/chain_engine_core/transitivity.py - Topological transitivity at cell resolution.
INPUT: Grid (<= 2^14 cells), GeneratorSystem, word budget | OUTPUT: TransitivityReport

Cell U reaches cell V when some word w with |w| <= budget (identity
included) has an enclosure of w(U) meeting V. Coverage is painted per
source with a 3-D difference array, one chunk of sources at a time.
"""
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import numpy as np

from config.settings import TRANSITIVITY_MAX_CELLS
from grid_space.grid_space_core.grid import Grid
from semigroup.semigroup_core.generator_system import GeneratorSystem, iter_extensions
from semigroup.semigroup_core.words import enumerate_words
from utils.budget import Budget, check_cap


@dataclass
class TransitivityReport:
    transitive: bool
    word_budget: int
    first_failing_pair: Optional[List[int]] = None   # [source position, target position]
    cover_length: List[int] = field(default_factory=list)  # per source: shortest full-cover length, -1 if none
    def to_dict(self): return asdict(self)
    def __bool__(self): return self.transitive


def coverage_masks(grid: Grid, sys: GeneratorSystem, sources: np.ndarray, word_budget: int,
                   budget: Optional[Budget] = None) -> List[np.ndarray]:
    """For each length k <= word_budget, a [len(sources), N] mask of cells met by words of length <= k."""
    n = grid.n
    levels, cover = [], np.zeros((sources.size, grid.N), dtype=bool)
    diff = np.zeros((sources.size, n + 1, n + 1), dtype=np.int32)
    current = 0
    rows = np.arange(sources.size)

    def flush():
        acc = diff.cumsum(axis=1).cumsum(axis=2)[:, :n, :n] > 0
        return acc[:, grid.iy, grid.ix]

    for w, img in iter_extensions(sys, grid.cell_boxes(sources), word_budget, budget):
        if len(w) != current:
            cover |= flush(); levels.append(cover.copy()); current = len(w)
        ix0, ix1, iy0, iy1, ok = grid.rect_ranges(img)
        r = rows[ok]
        np.add.at(diff, (r, iy0[ok], ix0[ok]), 1)
        np.add.at(diff, (r, iy0[ok], ix1[ok] + 1), -1)
        np.add.at(diff, (r, iy1[ok] + 1, ix0[ok]), -1)
        np.add.at(diff, (r, iy1[ok] + 1, ix1[ok] + 1), 1)
    cover |= flush(); levels.append(cover.copy())
    return levels


def is_topologically_transitive(grid: Grid, sys: GeneratorSystem, word_budget: int,
                                budget: Optional[Budget] = None, chunk: int = 64) -> TransitivityReport:
    check_cap("cells for pairwise transitivity", grid.N, TRANSITIVITY_MAX_CELLS)
    enumerate_words(sys.n, word_budget)  # enforces the word caps
    first, lengths = None, []
    for start in range(0, grid.N, chunk):
        src = np.arange(start, min(grid.N, start + chunk), dtype=np.int64)
        levels = coverage_masks(grid, sys, src, word_budget, budget)
        full = np.array([lv.all(axis=1) for lv in levels])          # [levels, sources]
        lengths.extend(int(np.argmax(col)) if col.any() else -1 for col in full.T)
        if first is None:
            miss = ~levels[-1]
            bad = np.flatnonzero(miss.any(axis=1))
            if bad.size:
                s = int(bad[0]); first = [int(src[s]), int(np.flatnonzero(miss[s])[0])]
    return TransitivityReport(first is None, word_budget, first, lengths)
