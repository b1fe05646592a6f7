"""map_expr/map_expr.py - Public interface, re-exports the DSL and evaluators."""
from map_expr.map_expr_core.ast_nodes import Add, Const, Mul, Pow, Scale, Sub, Var, to_source
from map_expr.map_expr_core.evaluator import eval_box, eval_boxes, eval_point, eval_points
from map_expr.map_expr_core.interval import BoxArray, IntervalBox2
from map_expr.map_expr_core.parser import MapExpr, parse_map_expr


def print_map_expr(e: MapExpr) -> str:
    return to_source(e.root)


__all__ = ["Add", "Const", "Mul", "Pow", "Scale", "Sub", "Var", "to_source",
           "eval_box", "eval_boxes", "eval_point", "eval_points", "BoxArray", "IntervalBox2",
           "MapExpr", "parse_map_expr", "print_map_expr"]
