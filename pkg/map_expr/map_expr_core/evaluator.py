"""map_expr/map_expr_core/evaluator.py - Point and box evaluation of MapExpr trees.
INPUT: MapExpr + points or boxes | OUTPUT: images (exact floats) or enclosures

Point evaluation runs the same operation sequence as the interval kernel
(explicit real/imag formulas, binary exponentiation), which is what makes
eval_point(e, p) land inside eval_box(e, b) for every p in b.
"""
from typing import Tuple, Union

import numpy as np

from map_expr.map_expr_core.ast_nodes import Add, Const, Mul, Node, Pow, Scale, Sub, Var
from map_expr.map_expr_core.interval import (BoxArray, IntervalBox2, cadd, cconst, cmul, cscale,
    csqr, csub)
from map_expr.map_expr_core.parser import MapExpr

Pair = Tuple[np.ndarray, np.ndarray]


def _root(e: Union[MapExpr, Node]) -> Node:
    return e.root if isinstance(e, MapExpr) else e


# ══════════════════════════════════════
# POINTS
# ══════════════════════════════════════

def _pmul(a: Pair, b: Pair) -> Pair:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _psqr(a: Pair) -> Pair:
    return a[0] * a[0] - a[1] * a[1], 2.0 * (a[0] * a[1])


def _ppow(a: Pair, n: int) -> Pair:
    if n == 0: return np.ones_like(a[0]), np.zeros_like(a[1])
    result, cur = None, a
    while n:
        if n & 1: result = cur if result is None else _pmul(result, cur)
        n >>= 1
        if n: cur = _psqr(cur)
    return result


def _points(n: Node, re: np.ndarray, im: np.ndarray) -> Pair:
    if isinstance(n, Var): return re, im
    if isinstance(n, Const):
        c = complex(n.value)
        return np.full_like(re, c.real), np.full_like(im, c.imag)
    if isinstance(n, Add):
        a, b = _points(n.left, re, im), _points(n.right, re, im)
        return a[0] + b[0], a[1] + b[1]
    if isinstance(n, Sub):
        a, b = _points(n.left, re, im), _points(n.right, re, im)
        return a[0] - b[0], a[1] - b[1]
    if isinstance(n, Mul):
        return _pmul(_points(n.left, re, im), _points(n.right, re, im))
    if isinstance(n, Scale):
        a = _points(n.operand, re, im)
        return n.factor * a[0], n.factor * a[1]
    if isinstance(n, Pow):
        return _ppow(_points(n.base, re, im), int(n.exp))
    raise TypeError(f"unknown node {type(n).__name__}")


def eval_points(e, re: np.ndarray, im: np.ndarray) -> Pair:
    """Vectorized point evaluation on real/imag coordinate arrays."""
    re = np.asarray(re, dtype=float); im = np.asarray(im, dtype=float)
    with np.errstate(all="ignore"):
        return _points(_root(e), re, im)


def eval_point(e, p: complex) -> complex:
    p = complex(p)
    re, im = eval_points(e, np.array([p.real]), np.array([p.imag]))
    return complex(float(re[0]), float(im[0]))


# ══════════════════════════════════════
# BOXES
# ══════════════════════════════════════

def _cpow(a: BoxArray, n: int) -> BoxArray:
    if n == 0: return cconst(1.0, len(a))
    result, cur = None, a
    while n:
        if n & 1: result = cur if result is None else cmul(result, cur)
        n >>= 1
        if n: cur = csqr(cur)
    return result


def _boxes(n: Node, b: BoxArray) -> BoxArray:
    if isinstance(n, Var): return b
    if isinstance(n, Const): return cconst(n.value, len(b))
    if isinstance(n, Add): return cadd(_boxes(n.left, b), _boxes(n.right, b))
    if isinstance(n, Sub): return csub(_boxes(n.left, b), _boxes(n.right, b))
    if isinstance(n, Mul): return cmul(_boxes(n.left, b), _boxes(n.right, b))
    if isinstance(n, Scale): return cscale(float(n.factor), _boxes(n.operand, b))
    if isinstance(n, Pow): return _cpow(_boxes(n.base, b), int(n.exp))
    raise TypeError(f"unknown node {type(n).__name__}")


def eval_boxes(e, b: BoxArray) -> BoxArray:
    """Sound enclosures for many boxes at once."""
    return _boxes(_root(e), b)


def eval_box(e, b: IntervalBox2) -> IntervalBox2:
    return eval_boxes(e, BoxArray.of(b)).box(0)
