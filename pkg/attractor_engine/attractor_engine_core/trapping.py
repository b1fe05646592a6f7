"""attractor_engine/attractor_engine_core/trapping.py - Trapping-region certificates and candidates.
INPUT: Grid, GeneratorSystem, candidate U, h | OUTPUT: TrappingCertificate (accepted or rejected)

U is certified when fatten(image_set, 0) lies inside U, where image_set is
the cell cover of f(h(U)) over every f with |f| <= L. One cell of margin
stands in for cl(U~) being strictly inside U. Image mass that leaves the
retained cells (past the bounds or off the membership) rejects any U short of
the whole grid.
"""
from typing import List, Optional, Sequence, Tuple

from attractor_engine.attractor_engine_core.image_operator import image_of
from chain_engine.chain_engine_core.step_graph import build_step_graph
from grid_space.grid_space_core.box_set import BoxSet, cover_region, fatten
from grid_space.grid_space_core.grid import Grid
from grid_space.grid_space_core.regions import Annulus, Disc, Rect
from models.data_models import TrappingCertificate
from semigroup.semigroup_core.generator_system import GeneratorSystem
from semigroup.semigroup_core.words import Word, enumerate_words, format_word, parse_word
from utils.budget import Budget
from utils.errors import ConfigError, PreconditionError
from utils.logger import logger


def certify_trapping(grid: Grid, sys: GeneratorSystem, U: BoxSet, h: Word, L: int,
                     budget: Optional[Budget] = None, label: str = "", kind: str = "") -> TrappingCertificate:
    if not U: raise PreconditionError("trapping candidate U must be nonempty")
    if h.is_identity: raise PreconditionError("h must be a nonempty word (h in G)")
    img = image_of(grid, sys, U, L, inner=h, budget=budget)
    outside = fatten(img.cells, 0.0) - U
    bad = outside.positions
    # Mass leaving the retained cells leaves U too, unless U is all of X.
    lost = img.spill + img.escaped
    whole = len(U) == grid.N
    accepted = bad.size == 0 and (whole or lost == 0)
    cert = TrappingCertificate(U=U, h=h, L=L, image_set=img.cells, accepted=accepted,
                               violating_cell=int(bad[0]) if bad.size else None, spill=img.spill,
                               escaped=img.escaped, label=label, kind=kind)
    note = ""
    if bad.size: note = f" ({bad.size} cells outside U)"
    elif lost: note = f" (images leave the grid: {img.spill} boxes past the bounds, {img.escaped} cells off X)"
    logger.log(f"[TRAP] {label or 'U'} h={format_word(h)}: {cert.status}{note}")
    return cert


def find_certificate(grid: Grid, sys: GeneratorSystem, U: BoxSet, L: int, h: Optional[Word] = None,
                     h_search_len: int = 2, budget: Optional[Budget] = None, label: str = "",
                     kind: str = "") -> TrappingCertificate:
    """Uses the given h, or tries every nonempty word up to h_search_len; first rejection is kept."""
    if h is not None: return certify_trapping(grid, sys, U, h, L, budget, label, kind)
    first = None
    for w in enumerate_words(sys.n, h_search_len)[1:]:
        cert = certify_trapping(grid, sys, U, w, L, budget, label, kind)
        if cert.accepted: return cert
        first = first or cert
    return first


# ══════════════════════════════════════
# CANDIDATES
# ══════════════════════════════════════

def region_candidate(grid: Grid, spec: dict, k: int) -> Tuple[str, str, BoxSet]:
    """Cells lying wholly inside a disc / annulus / rect, or the whole grid."""
    kind = spec.get("kind")
    field = f"trapping_candidates[{k}]"
    try:
        if kind == "whole": return spec.get("label", "whole"), kind, BoxSet.full(grid)
        if kind == "disc":
            r = float(spec["radius"]); c = spec.get("center", [0.0, 0.0])
            return spec.get("label", f"disc r={r:g}"), kind, cover_region(grid, Disc(r, float(c[0]), float(c[1])), inside=True)
        if kind == "annulus":
            a, b = float(spec["inner"]), float(spec["outer"])
            return spec.get("label", f"annulus {a:g}-{b:g}"), kind, cover_region(grid, Annulus(a, b), inside=True)
        if kind == "rect":
            rb = [float(v) for v in spec["bounds"]]
            return spec.get("label", f"rect {rb}"), kind, cover_region(grid, Rect(*rb), inside=True)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ConfigError(f"malformed candidate: {exc}", field) from exc
    raise ConfigError(f"unknown candidate kind {kind!r}", field)


def reachable_candidate(grid: Grid, sys: GeneratorSystem, seed: Sequence[float], g: Word, eps: float, L: int,
                        budget: Optional[Budget] = None) -> Optional[BoxSet]:
    """Cells reachable from the seed's cell by an (eps, g)-chain; None if the seed is off the grid."""
    p = int(grid.locate(float(seed[0]), float(seed[1]))[0])
    if p < 0: return None
    gr = build_step_graph(grid, sys, g, eps, L, budget)
    return BoxSet(grid, gr.reachable_from(p))


def gather_candidates(grid: Grid, sys: GeneratorSystem, specs: Sequence[dict], sublevel_radii: Sequence[float],
                      reachable_seeds: Sequence[Sequence[float]], chain_g: Word, chain_eps: float, L: int,
                      budget: Optional[Budget] = None) -> List[Tuple[str, str, BoxSet, Optional[Word]]]:
    """Config regions, sublevel discs |z| < r, and chain-reachable sets from seed points."""
    out = []
    for k, spec in enumerate(specs):
        label, kind, U = region_candidate(grid, spec, k)
        h = parse_word(spec["h"], sys.n, f"trapping_candidates[{k}].h") if "h" in spec else None
        out.append((label, kind, U, h))
    for r in sublevel_radii:
        out.append((f"sublevel r={float(r):g}", "sublevel", cover_region(grid, Disc(float(r)), inside=True), None))
    for seed in reachable_seeds:
        U = reachable_candidate(grid, sys, seed, chain_g, chain_eps, L, budget)
        if U is None:
            logger.log(f"[TRAP] seed {list(seed)} lies outside the grid, skipped"); continue
        out.append((f"reachable from {list(seed)}", "reachable", U, None))
    return out
