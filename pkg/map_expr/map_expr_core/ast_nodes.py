"""map_expr/map_expr_core/ast_nodes.py - Immutable AST for generator maps.
INPUT: parser output | OUTPUT: hashable node trees + canonical source text

Nodes compare structurally (frozen dataclasses), which is what the
round-trip property checks. to_source() emits the minimal parenthesization
that re-parses to the same tree.
"""
from dataclasses import dataclass
from typing import Union

# precedence levels used by the printer
_P_ADD, _P_MUL, _P_POW, _P_ATOM = 1, 2, 3, 4


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    value: complex


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Scale:
    """Real factor times a subexpression; produced when a real literal is the left factor."""
    factor: float
    operand: "Node"


Node = Union[Var, Const, Add, Sub, Mul, Pow, Scale]


def _prec(n: Node) -> int:
    if isinstance(n, (Add, Sub)): return _P_ADD
    if isinstance(n, (Mul, Scale)): return _P_MUL
    if isinstance(n, Pow): return _P_POW
    if isinstance(n, Const):
        c = complex(n.value)
        if c.imag == 0 and c.real >= 0: return _P_ATOM
        if c.real == 0 and c.imag == 1: return _P_ATOM
        return _P_ADD
    return _P_ATOM


def _number(x: float) -> str:
    return repr(float(x))


def _const_source(c: complex) -> str:
    c = complex(c)
    if c.imag == 0 and c.real >= 0: return _number(c.real)
    if c.real == 0 and c.imag == 1: return "i"
    # only reachable for hand-built trees; re-parses as an expression, not a literal
    re_part = f"0.0-{_number(-c.real)}" if c.real < 0 else _number(c.real)
    if c.imag == 0: return re_part
    return f"{re_part}{'-' if c.imag < 0 else '+'}{_number(abs(c.imag))}*i"


def _wrap(n: Node, need: bool) -> str:
    s = to_source(n)
    return f"({s})" if need else s


def to_source(n: Node) -> str:
    """Canonical DSL text; parse(to_source(parse(s))) == parse(s)."""
    if isinstance(n, Var): return "z"
    if isinstance(n, Const): return _const_source(n.value)
    if isinstance(n, (Add, Sub)):
        op = "+" if isinstance(n, Add) else "-"
        return f"{_wrap(n.left, _prec(n.left) < _P_ADD)}{op}{_wrap(n.right, _prec(n.right) <= _P_ADD)}"
    if isinstance(n, Mul):
        return f"{_wrap(n.left, _prec(n.left) < _P_MUL)}*{_wrap(n.right, _prec(n.right) <= _P_MUL)}"
    if isinstance(n, Scale):
        return f"{_number(n.factor)}*{_wrap(n.operand, _prec(n.operand) <= _P_MUL)}"
    if isinstance(n, Pow):
        return f"{_wrap(n.base, _prec(n.base) < _P_ATOM)}^{int(n.exp)}"
    raise TypeError(f"unknown node {type(n).__name__}")