"""chain_engine/chain_engine_core/step_graph.py - (eps, g)-step graphs on a box grid.
INPUT: Grid, GeneratorSystem, test word g, eps, step budget L | OUTPUT: StepGraph

One chain step x -> x' needs some h in G-hat with |h| <= L and
d(h(g(x)), x') < eps. The graph encodes this in two layers:

  A-node p   (cell p as a chain point)
     -> B-node c for every cell c meeting the enclosure of h.g(p)   [landing]
  B-node c
     -> A-node p' for every cell p' with gap(c, p') < eps          [spread]

A path A->B->A is one chain step, so cycles and SCCs over A-nodes are
exactly those of the cell-level chain relation. Enclosures covering more
than HUB_MIN_CELLS cells attach through 2-D dyadic hub nodes instead of one
edge per cell; a hub splits on x first, then on y, and its leaves point at
B-nodes. Every true step lands in a cell meeting the enclosure and that cell
is within eps of the target, so derived edges are a superset of the exact
Euclidean ones (by at most one cell diameter), consistent with outer
approximation.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import sparse

from chain_engine.chain_engine_core.digraph import reachable, recurrent_mask, scc_labels, to_csr
from config.settings import CELL_SNAP_TOL, HUB_MIN_CELLS, MAX_GRAPH_EDGES
from grid_space.grid_space_core.box_set import BoxSet
from grid_space.grid_space_core.grid import Grid
from map_expr.map_expr_core.interval import BoxArray
from semigroup.semigroup_core.generator_system import GeneratorSystem, iter_extensions, word_box_images
from semigroup.semigroup_core.words import Word
from utils.budget import Budget, check_cap
from utils.errors import PreconditionError


class StepGraph:
    """Adjacency over A-nodes [0, N), B-nodes [N, 2N) and hubs [2N, ...)."""

    def __init__(self, grid: Grid, adjacency: sparse.csr_matrix, g: Optional[Word] = None,
                 eps: float = 0.0, L: int = 0, layered: bool = True, meta: Optional[dict] = None):
        self.grid, self.adjacency, self.g, self.eps, self.L = grid, adjacency, g, eps, L
        self.layered = layered
        self.meta = meta or {}
        self._labels = None
        self._recurrent = None

    @classmethod
    def from_adjacency(cls, grid: Grid, src, dst) -> "StepGraph":
        """Plain cell graph (no landing layer); self-loops are allowed."""
        return cls(grid, to_csr(grid.N, src, dst), layered=False, meta={"edges": int(np.size(src))})

    @property
    def n_cells(self) -> int: return self.grid.N

    @property
    def labels(self) -> np.ndarray:
        if self._labels is None: self._labels = scc_labels(self.adjacency)
        return self._labels

    @property
    def cell_labels(self) -> np.ndarray: return self.labels[:self.n_cells]

    @property
    def recurrent(self) -> np.ndarray:
        """Per-cell flag: the cell lies on a chain cycle."""
        if self._recurrent is None:
            self._recurrent = recurrent_mask(self.adjacency, self.labels)[:self.n_cells]
        return self._recurrent

    def reachable_from(self, p: int) -> np.ndarray:
        """Per-cell mask of cells reachable from p by a chain of length >= 1."""
        r = reachable(self.adjacency, int(p))
        out = r[:self.n_cells].copy()
        out[int(p)] = bool(self.recurrent[int(p)])
        return out

    def successors(self, p: int) -> np.ndarray:
        """Cells reachable in exactly one chain step (walks through landing and hub nodes)."""
        a = self.adjacency
        if not self.layered:
            return np.unique(a.indices[a.indptr[p]:a.indptr[p + 1]])
        seen = np.zeros(a.shape[0], dtype=bool)
        frontier = np.unique(a.indices[a.indptr[p]:a.indptr[p + 1]])
        hits = []
        while frontier.size:
            seen[frontier] = True
            cells = frontier[frontier < self.n_cells]
            hits.append(cells)
            inner = frontier[frontier >= self.n_cells]
            nxt = [a.indices[a.indptr[u]:a.indptr[u + 1]] for u in inner]
            frontier = np.unique(np.concatenate(nxt)) if nxt else np.empty(0, dtype=np.int64)
            frontier = frontier[~seen[frontier]]
        return np.unique(np.concatenate(hits)) if hits else np.empty(0, dtype=np.int64)

    def cell_edges(self, max_cells: int = 4096) -> Tuple[np.ndarray, np.ndarray]:
        """Explicit one-step cell relation; only for small grids."""
        check_cap("cells for explicit edge listing", self.n_cells, max_cells)
        src, dst = [], []
        for p in range(self.n_cells):
            s = self.successors(p)
            src.append(np.full(s.size, p, dtype=np.int64)); dst.append(s)
        if not src: return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
        return np.concatenate(src), np.concatenate(dst)


# ══════════════════════════════════════
# HUB DECOMPOSITION
# ══════════════════════════════════════

def _segments(lo: int, hi: int, n: int) -> List[int]:
    """Heap indices of the canonical dyadic cover of leaves [lo, hi] in a tree with n leaves."""
    out, l, r = [], lo + n, hi + n + 1
    while l < r:
        if l & 1: out.append(l); l += 1
        if r & 1: r -= 1; out.append(r)
        l >>= 1; r >>= 1
    return out


class _HubSpace:
    def __init__(self, grid: Grid, base: int):
        self.grid, self.n, self.base = grid, grid.n, base
        self.side = 2 * grid.n - 1

    def hub_id(self, a, b):
        return self.base + (np.asarray(a) - 1) * self.side + (np.asarray(b) - 1)

    def decompose(self, ix0, ix1, iy0, iy1) -> np.ndarray:
        xs = _segments(int(ix0), int(ix1), self.n)
        ys = _segments(int(iy0), int(iy1), self.n)
        return np.array([self.hub_id(a, b) for a in xs for b in ys], dtype=np.int64)

    def closure_edges(self, used: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Downward edges of every hub reachable from the used ones, plus leaf -> B-node."""
        n, g = self.n, self.grid
        seen = np.zeros(self.side * self.side, dtype=bool)
        frontier = np.unique(used) - self.base
        src, dst = [], []
        while frontier.size:
            frontier = frontier[~seen[frontier]]
            if not frontier.size: break
            seen[frontier] = True
            a, b = frontier // self.side + 1, frontier % self.side + 1
            split_x, split_y = a < n, (a >= n) & (b < n)
            leaf = (a >= n) & (b >= n)
            ca = np.concatenate([2 * a[split_x], 2 * a[split_x] + 1, a[split_y], a[split_y]])
            cb = np.concatenate([b[split_x], b[split_x], 2 * b[split_y], 2 * b[split_y] + 1])
            parent = np.concatenate([frontier[split_x], frontier[split_x], frontier[split_y], frontier[split_y]])
            child = (ca - 1) * self.side + (cb - 1)
            src.append(parent + self.base); dst.append(child + self.base)
            lp = g.pos_raster[b[leaf] - n, a[leaf] - n]
            ok = lp >= 0
            src.append(frontier[leaf][ok] + self.base); dst.append(lp[ok] + g.N)
            frontier = np.unique(child)
        if not src: return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
        return np.concatenate(src), np.concatenate(dst)


# ══════════════════════════════════════
# EDGE LAYERS
# ══════════════════════════════════════

def spread_offsets(grid: Grid, eps: float) -> Tuple[np.ndarray, np.ndarray]:
    """Cell offsets (dx, dy) whose rectangles are within gap < eps of each other."""
    kx = min(grid.n, int(np.floor(eps / grid.cw)) + 1)
    ky = min(grid.n, int(np.floor(eps / grid.ch)) + 1)
    dx, dy = np.meshgrid(np.arange(-kx, kx + 1), np.arange(-ky, ky + 1), indexing="xy")
    gap = np.hypot(np.maximum(np.abs(dx) - 1, 0) * grid.cw, np.maximum(np.abs(dy) - 1, 0) * grid.ch)
    keep = gap < eps * (1 + CELL_SNAP_TOL)
    return dx[keep].astype(np.int64), dy[keep].astype(np.int64)


def _spread_edges(grid: Grid, eps: float) -> Tuple[np.ndarray, np.ndarray]:
    dx, dy = spread_offsets(grid, eps)
    check_cap("step graph edges", grid.N * dx.size, MAX_GRAPH_EDGES)
    src, dst = [], []
    for ox, oy in zip(dx.tolist(), dy.tolist()):
        tx, ty = grid.ix + ox, grid.iy + oy
        ok = (tx >= 0) & (tx < grid.n) & (ty >= 0) & (ty < grid.n)
        tp = np.full(grid.N, -1, dtype=np.int64)
        tp[ok] = grid.pos_raster[ty[ok], tx[ok]]
        hit = tp >= 0
        src.append(np.flatnonzero(hit) + grid.N); dst.append(tp[hit])
    return np.concatenate(src), np.concatenate(dst)


def _landing_edges(grid: Grid, images: BoxArray, sources: np.ndarray, hubs: _HubSpace):
    """A -> B edges for small enclosures, A -> hub edges for large ones."""
    ix0, ix1, iy0, iy1, ok = grid.rect_ranges(images)
    w, h = ix1 - ix0 + 1, iy1 - iy0 + 1
    size = np.where(ok, w * h, 0)
    small = ok & (size <= HUB_MIN_CELLS)
    s_src, s_w, s_ix0, s_iy0, s_cnt = sources[small], w[small], ix0[small], iy0[small], size[small]
    total = int(s_cnt.sum())
    rep = np.repeat(np.arange(s_cnt.size), s_cnt)
    k = np.arange(total) - np.repeat(np.cumsum(s_cnt) - s_cnt, s_cnt)
    cx = s_ix0[rep] + k % s_w[rep]
    cy = s_iy0[rep] + k // s_w[rep]
    cp = grid.pos_raster[cy, cx]
    keep = cp >= 0
    src_parts, dst_parts = [s_src[rep][keep]], [cp[keep] + grid.N]
    big = np.flatnonzero(ok & ~small)
    for j in big:
        hub = hubs.decompose(ix0[j], ix1[j], iy0[j], iy1[j])
        src_parts.append(np.full(hub.size, sources[j], dtype=np.int64)); dst_parts.append(hub)
    return np.concatenate(src_parts), np.concatenate(dst_parts), int(big.size)


def build_step_graph(grid: Grid, sys: GeneratorSystem, g: Word, eps: float, L: int,
                     budget: Optional[Budget] = None, threads: int = 1, chunk: int = 1 << 15) -> StepGraph:
    if eps <= 0: raise PreconditionError(f"eps must be > 0, got {eps}")
    if L < 0: raise PreconditionError(f"L must be >= 0, got {L}")
    if g.is_identity: raise PreconditionError("test word g must be nonempty")
    budget = budget if budget is not None else Budget()
    hubs = _HubSpace(grid, 2 * grid.N)

    def land(start: int):
        pos = np.arange(start, min(grid.N, start + chunk), dtype=np.int64)
        base = word_box_images(sys, g, grid.cell_boxes(pos), budget)
        src, dst, n_big = [], [], 0
        for _, img in iter_extensions(sys, base, L, budget):
            s, d, b = _landing_edges(grid, img, pos, hubs)
            src.append(s); dst.append(d); n_big += b
        return np.concatenate(src), np.concatenate(dst), n_big

    starts = list(range(0, grid.N, chunk))
    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex: parts = list(ex.map(land, starts))
    else:
        parts = [land(s) for s in starts]
    a_src = np.concatenate([p[0] for p in parts]); a_dst = np.concatenate([p[1] for p in parts])
    n_big = sum(p[2] for p in parts)
    used_hubs = a_dst[a_dst >= 2 * grid.N]
    h_src, h_dst = hubs.closure_edges(used_hubs)
    b_src, b_dst = _spread_edges(grid, eps)
    total_nodes = 2 * grid.N + hubs.side * hubs.side
    n_edges = a_src.size + h_src.size + b_src.size
    check_cap("step graph edges", n_edges, MAX_GRAPH_EDGES)
    adj = to_csr(total_nodes, np.concatenate([a_src, h_src, b_src]), np.concatenate([a_dst, h_dst, b_dst]))
    meta = {"landing_edges": int(a_src.size), "hub_edges": int(h_src.size), "spread_edges": int(b_src.size),
            "hub_enclosures": int(n_big), "edges": int(adj.nnz)}
    return StepGraph(grid, adj, g, eps, L, layered=True, meta=meta)


# ══════════════════════════════════════
# QUERIES
# ══════════════════════════════════════

def chain_reachable(gr: StepGraph, a: int, b: int) -> bool:
    """True iff a chain of length >= 1 leads from cell a to cell b."""
    for p in (a, b):
        if not 0 <= int(p) < gr.n_cells: raise PreconditionError(f"cell {p} not in grid")
    if int(a) == int(b): return bool(gr.recurrent[int(a)])
    return bool(gr.labels[int(a)] == gr.labels[int(b)]) or bool(gr.reachable_from(a)[int(b)])


def chain_recurrent_cells(gr: StepGraph) -> BoxSet:
    return BoxSet(gr.grid, gr.recurrent)


def export_rows(gr: StepGraph) -> List[Dict[str, int]]:
    """Cell-level edge list as flat ids, for the `src,dst` CSV."""
    src, dst = gr.cell_edges()
    cells = gr.grid.cells
    return [{"src": int(cells[s]), "dst": int(cells[d])} for s, d in zip(src, dst)]
