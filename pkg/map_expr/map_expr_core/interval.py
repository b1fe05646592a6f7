"""map_expr/map_expr_core/interval.py - Outward-rounded interval kernel, vectorized.
INPUT: numpy arrays of interval endpoints | OUTPUT: enclosing endpoint arrays

Every arithmetic result is pushed one ulp outward with np.nextafter, so an
enclosure computed here contains both the exact real image and the
round-to-nearest float result of the same operation sequence. NaN produced
by inf*0 or inf-inf is widened to the full line.
"""
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from utils.errors import PreconditionError

Interval = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class IntervalBox2:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def __post_init__(self):
        vals = (self.re_lo, self.re_hi, self.im_lo, self.im_hi)
        if any(v != v for v in vals):
            raise PreconditionError(f"NaN bound in box {vals}")
        if self.re_lo > self.re_hi or self.im_lo > self.im_hi:
            raise PreconditionError(f"empty box {vals}")

    @property
    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite([self.re_lo, self.re_hi, self.im_lo, self.im_hi])))

    @property
    def width(self) -> float: return self.re_hi - self.re_lo

    @property
    def height(self) -> float: return self.im_hi - self.im_lo

    @property
    def diameter(self) -> float: return float(np.hypot(self.width, self.height))

    def contains_point(self, p: complex) -> bool:
        p = complex(p)
        return self.re_lo <= p.real <= self.re_hi and self.im_lo <= p.imag <= self.im_hi

    def contains_box(self, other: "IntervalBox2") -> bool:
        return (self.re_lo <= other.re_lo and other.re_hi <= self.re_hi
                and self.im_lo <= other.im_lo and other.im_hi <= self.im_hi)

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.re_lo, self.re_hi, self.im_lo, self.im_hi)

    @classmethod
    def from_sequence(cls, seq) -> "IntervalBox2":
        if len(seq) != 4: raise PreconditionError(f"box needs 4 bounds, got {len(seq)}")
        return cls(*(float(v) for v in seq))


class BoxArray(NamedTuple):
    """Many complex boxes at once: four endpoint arrays of equal shape."""
    re_lo: np.ndarray
    re_hi: np.ndarray
    im_lo: np.ndarray
    im_hi: np.ndarray

    @classmethod
    def of(cls, box: IntervalBox2) -> "BoxArray":
        return cls(*(np.array([v], dtype=float) for v in box.as_tuple()))

    def box(self, k: int = 0) -> IntervalBox2:
        return IntervalBox2(float(self.re_lo[k]), float(self.re_hi[k]), float(self.im_lo[k]), float(self.im_hi[k]))

    def __len__(self): return int(self.re_lo.shape[0])


# ── Real intervals ──

def _down(x): return np.nextafter(x, -np.inf)
def _up(x): return np.nextafter(x, np.inf)


def _sanitize(lo, hi) -> Interval:
    return np.where(np.isnan(lo), -np.inf, lo), np.where(np.isnan(hi), np.inf, hi)


def iadd(a: Interval, b: Interval) -> Interval:
    with np.errstate(invalid="ignore", over="ignore"):
        return _sanitize(_down(a[0] + b[0]), _up(a[1] + b[1]))


def isub(a: Interval, b: Interval) -> Interval:
    with np.errstate(invalid="ignore", over="ignore"):
        return _sanitize(_down(a[0] - b[1]), _up(a[1] - b[0]))


def imul(a: Interval, b: Interval) -> Interval:
    with np.errstate(invalid="ignore", over="ignore"):
        p = np.stack([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
    lo = np.where(np.isnan(p), -np.inf, p).min(axis=0)
    hi = np.where(np.isnan(p), np.inf, p).max(axis=0)
    return _down(lo), _up(hi)


def isqr(a: Interval) -> Interval:
    """Tight square: never negative, exact 0 when the interval straddles 0."""
    lo, hi = a
    with np.errstate(invalid="ignore", over="ignore"):
        l2, h2 = lo * lo, hi * hi
    straddle = (lo < 0) & (hi > 0)
    low = np.where(lo >= 0, l2, h2)
    high = np.where(lo >= 0, h2, l2)
    out_lo = np.where(straddle, 0.0, np.maximum(_down(np.minimum(low, high)), 0.0))
    out_hi = _up(np.maximum(low, high))
    return _sanitize(out_lo, out_hi)


def iscale(f: float, a: Interval) -> Interval:
    with np.errstate(invalid="ignore", over="ignore"):
        x, y = f * a[0], f * a[1]
    if f >= 0: return _sanitize(_down(x), _up(y))
    return _sanitize(_down(y), _up(x))


# ── Complex boxes ──

def cadd(a: BoxArray, b: BoxArray) -> BoxArray:
    re, im = iadd(a[0:2], b[0:2]), iadd(a[2:4], b[2:4])
    return BoxArray(re[0], re[1], im[0], im[1])


def csub(a: BoxArray, b: BoxArray) -> BoxArray:
    re, im = isub(a[0:2], b[0:2]), isub(a[2:4], b[2:4])
    return BoxArray(re[0], re[1], im[0], im[1])


def cmul(a: BoxArray, b: BoxArray) -> BoxArray:
    ar, ai, br, bi = a[0:2], a[2:4], b[0:2], b[2:4]
    re = isub(imul(ar, br), imul(ai, bi))
    im = iadd(imul(ar, bi), imul(ai, br))
    return BoxArray(re[0], re[1], im[0], im[1])


def csqr(a: BoxArray) -> BoxArray:
    ar, ai = a[0:2], a[2:4]
    re = isub(isqr(ar), isqr(ai))
    lo, hi = imul(ar, ai)
    with np.errstate(over="ignore"):
        return BoxArray(re[0], re[1], 2.0 * lo, 2.0 * hi)


def cscale(f: float, a: BoxArray) -> BoxArray:
    re, im = iscale(f, a[0:2]), iscale(f, a[2:4])
    return BoxArray(re[0], re[1], im[0], im[1])


def cconst(c: complex, n: int) -> BoxArray:
    c = complex(c)
    return BoxArray(np.full(n, c.real), np.full(n, c.real), np.full(n, c.imag), np.full(n, c.imag))
