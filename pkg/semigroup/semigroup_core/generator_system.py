"""semigroup/semigroup_core/generator_system.py - Generator lists and word evaluation.
INPUT: parsed MapExprs, Words, points or boxes | OUTPUT: images, enclosures, abelian evidence
"""
from dataclasses import asdict, dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import ABELIAN_SAMPLES, ABELIAN_TOL
from map_expr.map_expr_core.evaluator import eval_boxes, eval_points
from map_expr.map_expr_core.interval import BoxArray, IntervalBox2
from map_expr.map_expr_core.parser import MapExpr, parse_map_expr
from semigroup.semigroup_core.words import Word
from utils.budget import Budget
from utils.errors import ConfigError, MapSyntaxError, PreconditionError


@dataclass(frozen=True)
class GeneratorSystem:
    generators: Tuple[MapExpr, ...]
    abelian_claimed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not self.generators:
            raise ConfigError("at least one generator is required", "generators")

    @property
    def n(self) -> int: return len(self.generators)

    @property
    def sources(self) -> List[str]: return [str(g) for g in self.generators]

    @classmethod
    def from_sources(cls, sources: Sequence[str], abelian_claimed: bool = False) -> "GeneratorSystem":
        if not sources: raise ConfigError("at least one generator is required", "generators")
        exprs = []
        for k, src in enumerate(sources):
            try: exprs.append(parse_map_expr(src))
            except MapSyntaxError as exc:
                raise ConfigError(f"{exc} in {src!r}", f"generators[{k}]") from exc
        return cls(tuple(exprs), abelian_claimed)


# ══════════════════════════════════════
# POINTS
# ══════════════════════════════════════

def _check_word(sys: GeneratorSystem, w: Word):
    if any(i < 0 or i >= sys.n for i in w.indices):
        raise PreconditionError(f"word {w} uses an index outside 0..{sys.n - 1}")


def apply_word_points(sys: GeneratorSystem, w: Word, re: np.ndarray, im: np.ndarray):
    _check_word(sys, w)
    re, im = np.asarray(re, dtype=float), np.asarray(im, dtype=float)
    for i in reversed(w.indices):
        re, im = eval_points(sys.generators[i], re, im)
    return re, im


def apply_word(sys: GeneratorSystem, w: Word, p: complex) -> complex:
    p = complex(p)
    re, im = apply_word_points(sys, w, np.array([p.real]), np.array([p.imag]))
    return complex(float(re[0]), float(im[0]))


def orbit_points(sys: GeneratorSystem, p: complex, max_len: int) -> np.ndarray:
    """Truncated orbit {w(p) : |w| <= max_len}, p first, breadth by word length."""
    p = complex(p)
    level_re, level_im = np.array([p.real]), np.array([p.imag])
    out = [level_re + 1j * level_im]
    for _ in range(max_len):
        parts = [eval_points(g, level_re, level_im) for g in sys.generators]
        level_re = np.concatenate([a for a, _ in parts]); level_im = np.concatenate([b for _, b in parts])
        out.append(level_re + 1j * level_im)
    return np.concatenate(out)


# ══════════════════════════════════════
# BOXES
# ══════════════════════════════════════

def word_box_images(sys: GeneratorSystem, w: Word, boxes: BoxArray, budget: Optional[Budget] = None) -> BoxArray:
    _check_word(sys, w)
    for i in reversed(w.indices):
        if budget is not None: budget.charge("box_evals", len(boxes))
        boxes = eval_boxes(sys.generators[i], boxes)
    return boxes


def word_box_image(sys: GeneratorSystem, w: Word, b: IntervalBox2) -> IntervalBox2:
    """Enclosure of b under the composed map, innermost generator first."""
    return word_box_images(sys, w, BoxArray.of(b)).box(0)


def iter_extensions(sys: GeneratorSystem, base: BoxArray, max_len: int,
                    budget: Optional[Budget] = None) -> Iterator[Tuple[Word, BoxArray]]:
    """Yields (f, enclosure of f applied to base) for every f with |f| <= max_len, identity first.

    Level k is built from level k-1 by post-composing one generator, so each
    enclosure costs one box evaluation per box. Order is length then lex.
    """
    level = [(Word(()), base)]
    yield level[0]
    for _ in range(max_len):
        nxt = []
        for i in range(sys.n):
            for w, img in level:
                if budget is not None: budget.charge("box_evals", len(img))
                nxt.append((Word((i,)) * w, eval_boxes(sys.generators[i], img)))
        nxt.sort(key=lambda t: t[0].indices)
        for item in nxt: yield item
        level = nxt


# ══════════════════════════════════════
# ABELIAN EVIDENCE
# ══════════════════════════════════════

@dataclass
class AbelianEvidence:
    passed: bool
    samples: int
    tolerance: float
    max_defect: float
    worst_pair: Optional[List[int]] = None
    note: str = "sampled, not proven"
    def to_dict(self): return asdict(self)


def sample_phase_space(bounds: IntervalBox2, region, n_samples: int, rng: np.random.Generator):
    """Uniform samples in bounds, rejection-filtered by the membership region."""
    xs, ys, need = [], [], n_samples
    for _ in range(64):
        m = max(need * 2, 16)
        x = rng.uniform(bounds.re_lo, bounds.re_hi, m); y = rng.uniform(bounds.im_lo, bounds.im_hi, m)
        if region is not None:
            keep = np.asarray(region.contains(x, y), dtype=bool); x, y = x[keep], y[keep]
        xs.append(x[:need]); ys.append(y[:need]); need -= min(need, x.size)
        if need == 0: break
    return np.concatenate(xs), np.concatenate(ys)


def abelian_evidence(sys: GeneratorSystem, n_samples: int = ABELIAN_SAMPLES, bounds: Optional[IntervalBox2] = None,
                     region=None, seed: int = 0, tol: float = ABELIAN_TOL) -> AbelianEvidence:
    if n_samples < 1: raise PreconditionError("n_samples must be >= 1")
    bounds = bounds or IntervalBox2(-1.0, 1.0, -1.0, 1.0)
    x, y = sample_phase_space(bounds, region, n_samples, np.random.default_rng(seed))
    worst, pair = 0.0, None
    for i in range(sys.n):
        for j in range(i + 1, sys.n):
            a = apply_word_points(sys, Word((i, j)), x, y)
            b = apply_word_points(sys, Word((j, i)), x, y)
            with np.errstate(invalid="ignore", over="ignore"):
                d = np.hypot(a[0] - b[0], a[1] - b[1])
            d = np.where(np.isnan(d), np.inf, d)
            m = float(d.max()) if d.size else 0.0
            if m > worst or pair is None: worst, pair = max(worst, m), [i, j]
    return AbelianEvidence(passed=worst <= tol, samples=int(x.size), tolerance=tol, max_defect=worst,
                           worst_pair=pair)


def check_abelian_sampled(sys: GeneratorSystem, n_samples: int = ABELIAN_SAMPLES, bounds=None, region=None,
                          seed: int = 0) -> bool:
    return abelian_evidence(sys, n_samples, bounds, region, seed).passed


def is_forward_invariant_sampled(sys: GeneratorSystem, pred, x: np.ndarray, y: np.ndarray) -> bool:
    """Sampled check that every generator maps the region {pred} into itself.
    Invariance under G reduces to invariance under the generators."""
    inside = np.asarray(pred(x, y), dtype=bool)
    x, y = np.asarray(x)[inside], np.asarray(y)[inside]
    for g in sys.generators:
        gx, gy = eval_points(g, x, y)
        if not np.all(np.asarray(pred(gx, gy), dtype=bool)): return False
    return True
