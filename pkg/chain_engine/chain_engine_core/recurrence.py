"""chain_engine/chain_engine_core/recurrence.py - Outer approximation of CR(G) and its chain components.
INPUT: Grid, GeneratorSystem, g/eps schedules, L | OUTPUT: CR BoxSet, ChainComponents, transitivity flags

For a fixed g and L, shrinking eps removes spread edges and nothing else,
so step graphs are nested in eps. Recurrence and mutual reachability at the
smallest eps therefore imply them at every larger eps, and the schedule
intersection only needs one graph per g (the smallest eps).
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from chain_engine.chain_engine_core.digraph import refine_partition
from chain_engine.chain_engine_core.step_graph import StepGraph, build_step_graph
from grid_space.grid_space_core.box_set import BoxSet, cells_meeting_boxes, excess, fatten
from grid_space.grid_space_core.grid import Grid
from semigroup.semigroup_core.generator_system import GeneratorSystem, word_box_images
from semigroup.semigroup_core.words import Word, format_word
from utils.budget import Budget
from utils.errors import ConfigError, PreconditionError
from utils.logger import logger


@dataclass
class ChainComponents:
    grid: Grid
    positions: np.ndarray   # sorted cell positions
    labels: np.ndarray      # component id per position, ids 0..k-1 by first cell

    @property
    def count(self) -> int: return int(self.labels.max()) + 1 if self.labels.size else 0

    def classes(self) -> List[BoxSet]:
        return [BoxSet.from_positions(self.grid, self.positions[self.labels == k]) for k in range(self.count)]

    def cover(self) -> BoxSet: return BoxSet.from_positions(self.grid, self.positions)

    def sizes(self) -> List[int]: return np.bincount(self.labels, minlength=self.count).tolist() if self.labels.size else []

    def rows(self) -> List[Dict[str, int]]:
        """Rows for the `ix,iy,component_id` CSV."""
        ix, iy = self.grid.ix[self.positions], self.grid.iy[self.positions]
        return [{"ix": int(a), "iy": int(b), "component_id": int(c)} for a, b, c in zip(ix, iy, self.labels)]


@dataclass
class CRAnalysis:
    cr: BoxSet
    components: ChainComponents
    per_word: List[dict] = field(default_factory=list)
    eps_used: float = 0.0


def validate_schedules(g_schedule: Sequence[Word], eps_schedule: Sequence[float]):
    if not g_schedule: raise ConfigError("g_schedule must be nonempty", "g_schedule")
    if not eps_schedule: raise ConfigError("eps_schedule must be nonempty", "eps_schedule")
    if any(e <= 0 for e in eps_schedule): raise ConfigError("eps values must be > 0", "eps_schedule")
    if any(b >= a for a, b in zip(eps_schedule, eps_schedule[1:])):
        raise ConfigError("eps_schedule must be strictly decreasing", "eps_schedule")
    if any(w.is_identity for w in g_schedule): raise ConfigError("g words must be nonempty", "g_schedule")


def chain_components(gr: StepGraph, cr: BoxSet) -> ChainComponents:
    """Partition cr by SCC membership in gr."""
    if not cr.issubset(BoxSet(gr.grid, gr.recurrent)):
        raise PreconditionError("cr must lie inside the chain recurrent cells of the graph")
    pos = cr.positions
    labels = refine_partition(gr.cell_labels[pos]) if pos.size else np.empty(0, dtype=np.int64)
    return ChainComponents(gr.grid, pos, labels)


def _graph_summary(grid: Grid, sys: GeneratorSystem, g: Word, eps: float, L: int, budget: Budget, threads: int):
    gr = build_step_graph(grid, sys, g, eps, L, budget, threads)
    rec = gr.recurrent.copy()
    lab = gr.cell_labels.copy()
    logger.log(f"[CR] g={format_word(g)} eps={eps:g}: {int(rec.sum())} recurrent cells, {gr.meta['edges']} edges")
    return rec, lab, {"g": format_word(g), "eps": eps, "recurrent": int(rec.sum()), **gr.meta}


def analyze_chains(grid: Grid, sys: GeneratorSystem, g_schedule: Sequence[Word], eps_schedule: Sequence[float],
                   L: int, budget: Optional[Budget] = None, threads: int = 1) -> CRAnalysis:
    """approx_CR plus the chain components of the result (refined across every g)."""
    validate_schedules(g_schedule, eps_schedule)
    budget = budget if budget is not None else Budget()
    eps = float(eps_schedule[-1])

    def run(g): return _graph_summary(grid, sys, g, eps, L, budget, 1)

    if threads > 1 and len(g_schedule) > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(g_schedule))) as ex:
            results = list(ex.map(run, g_schedule))
    else:
        results = [_graph_summary(grid, sys, g, eps, L, budget, threads) for g in g_schedule]
    mask = np.ones(grid.N, dtype=bool)
    for rec, _, _ in results: mask &= rec
    cr = BoxSet(grid, mask)
    pos = cr.positions
    labels = refine_partition(*[lab[pos] for _, lab, _ in results]) if pos.size else np.empty(0, dtype=np.int64)
    return CRAnalysis(cr, ChainComponents(grid, pos, labels), [r[2] for r in results], eps)


def approx_CR(grid: Grid, sys: GeneratorSystem, g_schedule: Sequence[Word], eps_schedule: Sequence[float],
              L: int, budget: Optional[Budget] = None, threads: int = 1) -> BoxSet:
    return analyze_chains(grid, sys, g_schedule, eps_schedule, L, budget, threads).cr


def is_chain_transitive_on(gr: StepGraph, cells: BoxSet) -> bool:
    """Every ordered pair of cells (a == b included) joined by a chain in gr."""
    pos = cells.positions
    if not pos.size: return True
    if not np.all(gr.recurrent[pos]): return False
    return bool(np.all(gr.cell_labels[pos] == gr.cell_labels[pos[0]]))


def is_chain_transitive(grid: Grid, sys: GeneratorSystem, cells: BoxSet, g_schedule: Sequence[Word],
                        eps_schedule: Sequence[float], L: int, budget: Optional[Budget] = None,
                        threads: int = 1) -> bool:
    validate_schedules(g_schedule, eps_schedule)
    eps = float(eps_schedule[-1])
    for g in g_schedule:
        gr = build_step_graph(grid, sys, g, eps, L, budget, threads)
        if not is_chain_transitive_on(gr, cells): return False
    return True


def components_chain_transitive(grid: Grid, sys: GeneratorSystem, comps: ChainComponents,
                                g_schedule: Sequence[Word], eps_schedule: Sequence[float], L: int,
                                budget: Optional[Budget] = None) -> List[bool]:
    """Class-level check: each component is chain transitive for every (g, eps)."""
    validate_schedules(g_schedule, eps_schedule)
    classes = comps.classes()
    flags = [True] * len(classes)
    for g in g_schedule:
        gr = build_step_graph(grid, sys, g, float(eps_schedule[-1]), L, budget)
        flags = [f and is_chain_transitive_on(gr, c) for f, c in zip(flags, classes)]
    return flags


# ── invariance ──
# For abelian G the exact CR is G-invariant. The grid CR is an outer
# approximation: it carries a band of width w around each invariant piece, and
# a map that contracts toward the piece (z^k near |z| = 1) pushes the band's
# inner edge about (k - 1) * w further in. Defect cells are that shadow plus
# enclosure width; invariance_gaps measures how far the shadow reaches.

def _generator_images(sys: GeneratorSystem, s: BoxSet, budget: Optional[Budget]) -> List[BoxSet]:
    boxes = s.grid.cell_boxes(s.positions)
    return [cells_meeting_boxes(s.grid, word_box_images(sys, Word((i,)), boxes, budget)) for i in range(sys.n)]


def invariance_defects(sys: GeneratorSystem, s: BoxSet, budget: Optional[Budget] = None) -> List[int]:
    """Per generator, the number of cells met by g_i(s) lying outside fatten(s, 0)."""
    if not s: return [0] * sys.n
    closure = fatten(s, 0.0)
    return [len(img - closure) for img in _generator_images(sys, s, budget)]


def invariance_gaps(sys: GeneratorSystem, s: BoxSet, budget: Optional[Budget] = None) -> List[float]:
    """Per generator, the largest centre distance from a defect cell of g_i(s) to s (0.0 without defects)."""
    if not s: return [0.0] * sys.n
    closure = fatten(s, 0.0)
    return [excess(img - closure, s) for img in _generator_images(sys, s, budget)]
