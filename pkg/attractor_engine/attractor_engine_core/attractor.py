"""attractor_engine/attractor_engine_core/attractor.py - Attractors, omega-limit cells and basins.
INPUT: TrappingCertificate, designated generator alpha0, iteration caps | OUTPUT: AttractorRecord, BoxSets

Attractor: S0 = cells of h(U); S_{m+1} = T(S_m) where T images through every
word of length <= L containing alpha0 (each step adds at least one alpha0
occurrence). The sequence of cell sets is eventually periodic; cells visited
infinitely often are the union over the cycle, and A = fatten(core, 0).

Omega-limit: a forward max-plus pass over the per-generator cell relations
records, for every cell, the largest alpha0 count of a word reaching it
(length <= depth_m * (L + 1)). Q_m = cells with count >= m, and
omega = intersection over m <= depth_m of fatten(Q_m, 0). The Q_m shrink as m
grows, so a cell b is in the basin of A exactly when some word with at least
depth_m alpha0 occurrences carries b into fatten(A, 0): one backward pass
answers that for every b at once.
"""
from typing import List, Optional, Sequence

import numpy as np
from scipy import sparse

from attractor_engine.attractor_engine_core.image_operator import generator_relations, image_of
from grid_space.grid_space_core.box_set import BoxSet, fatten
from grid_space.grid_space_core.grid import Grid
from models.data_models import AttractorRecord, TrappingCertificate
from semigroup.semigroup_core.generator_system import GeneratorSystem
from utils.budget import Budget
from utils.errors import PreconditionError
from utils.logger import logger

Relations = Sequence[sparse.csr_matrix]


def _check_alpha0(sys: GeneratorSystem, alpha0: int):
    if not 0 <= int(alpha0) < sys.n:
        raise PreconditionError(f"alpha0 must index a generator in 0..{sys.n - 1}, got {alpha0}")


def compute_attractor(grid: Grid, sys: GeneratorSystem, cert: TrappingCertificate, alpha0: int, m_max: int,
                      budget: Optional[Budget] = None) -> AttractorRecord:
    if not cert.accepted: raise PreconditionError("certificate was rejected")
    if m_max < 1: raise PreconditionError("m_max must be >= 1")
    if cert.L < 1: raise PreconditionError("attractor words need L >= 1 to contain alpha0")
    _check_alpha0(sys, alpha0)
    s = image_of(grid, sys, cert.U, 0, inner=cert.h, budget=budget).cells
    seen = {s.mask.tobytes(): 0}
    history = [s]
    core, stabilized, m_used, cycle = None, False, m_max, 0
    for m in range(1, m_max + 1):
        s = image_of(grid, sys, s, cert.L, require=int(alpha0), budget=budget).cells
        key = s.mask.tobytes()
        if key in seen:
            j = seen[key]
            core = history[j]
            for t in history[j + 1:]: core = core | t
            stabilized, m_used, cycle = True, m, m - j
            break
        seen[key] = m
        history.append(s)
    if core is None: core = history[-1]
    A = fatten(core, 0.0)
    if not A: raise PreconditionError("attractor iteration produced an empty set")
    logger.log(f"[ATTR] {cert.label or 'U'} alpha0={alpha0}: |A|={len(A)} "
               f"{'stabilized' if stabilized else 'not stabilized'} after {m_used} (cycle {cycle})")
    return AttractorRecord(A=A, source=cert, alpha0=int(alpha0), stabilized=stabilized, m_used=m_used,
                           cycle_length=cycle)


# ══════════════════════════════════════
# MAX-PLUS PASSES
# ══════════════════════════════════════

def _maxplus(rel: sparse.csr_matrix, vals: np.ndarray, bonus: int, cap: int) -> np.ndarray:
    """out[r] = max over entries (r, c) of vals[c] + bonus; -1 marks unreachable."""
    out = np.full(rel.shape[0], -1, dtype=np.int32)
    if rel.nnz == 0: return out
    data = vals[rel.indices]
    data = np.where(data >= 0, np.minimum(data + bonus, cap), -1)
    rows = np.flatnonzero(np.diff(rel.indptr) > 0)
    out[rows] = np.maximum.reduceat(data, rel.indptr[rows])
    return out


def _best_counts(rels: Relations, start: np.ndarray, alpha0: int, steps: int, cap: int) -> np.ndarray:
    """Per node, max alpha0 count over words of length 1..steps from start (rels oriented for the pass)."""
    cur = np.where(start, 0, -1).astype(np.int32)
    top = np.full(cur.size, -1, dtype=np.int32)
    for _ in range(steps):
        nxt = np.full(cur.size, -1, dtype=np.int32)
        for i, rel in enumerate(rels):
            nxt = np.maximum(nxt, _maxplus(rel, cur, int(i == alpha0), cap))
        top = np.maximum(top, nxt)
        if np.array_equal(nxt, cur): break
        cur = nxt
    return top


def omega_limit_cells(grid: Grid, sys: GeneratorSystem, start: BoxSet, alpha0: int, depth_m: int, L: int,
                      budget: Optional[Budget] = None, relations: Optional[Relations] = None) -> BoxSet:
    if not start: raise PreconditionError("start must be nonempty")
    if depth_m < 1: raise PreconditionError("depth_m must be >= 1")
    _check_alpha0(sys, alpha0)
    rels = relations if relations is not None else generator_relations(grid, sys, budget)
    top = _best_counts([r.T.tocsr() for r in rels], start.mask, int(alpha0), depth_m * (L + 1), depth_m)
    omega = BoxSet.full(grid)
    for m in range(1, depth_m + 1):
        omega = omega & fatten(BoxSet(grid, top >= m), 0.0)
    return omega


def basin(grid: Grid, sys: GeneratorSystem, rec: AttractorRecord, alpha0: int, depth_m: int, L: int,
          budget: Optional[Budget] = None, relations: Optional[Relations] = None) -> BoxSet:
    """Cells b whose omega_limit_cells({b}) meets rec.A."""
    if not rec.A: raise PreconditionError("attractor must be nonempty")
    if depth_m < 1: raise PreconditionError("depth_m must be >= 1")
    _check_alpha0(sys, alpha0)
    rels = relations if relations is not None else generator_relations(grid, sys, budget)
    target = fatten(rec.A, 0.0)
    top = _best_counts(list(rels), target.mask, int(alpha0), depth_m * (L + 1), depth_m)
    b = BoxSet(grid, top >= depth_m)
    logger.log(f"[BASIN] {rec.source.label or 'U'} alpha0={alpha0}: |B(A)|={len(b)}")
    return b


def invariance_defect_cells(grid: Grid, sys: GeneratorSystem, A: BoxSet, relations: Relations) -> List[int]:
    """Per generator, cells met by g_i(A) outside fatten(A, 0)."""
    closure = fatten(A, 0.0)
    out = []
    for rel in relations:
        hit = np.asarray(rel[A.positions].sum(axis=0)).ravel() > 0
        out.append(len(BoxSet(grid, hit) - closure))
    return out
