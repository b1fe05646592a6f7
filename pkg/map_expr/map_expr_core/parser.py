"""map_expr/map_expr_core/parser.py - Tokenizer + recursive descent for the map DSL.
INPUT: source text | OUTPUT: MapExpr (AST root + source)

Grammar:
  expr   := term (('+'|'-') term)*
  term   := factor ('*' factor)*
  factor := atom ('^' uint)?
  atom   := 'z' | number | 'i' | '(' expr ')'
Errors carry the byte offset of the offending token.
"""
import math
import re
from dataclasses import dataclass, field
from typing import List

from map_expr.map_expr_core.ast_nodes import Add, Const, Mul, Node, Pow, Scale, Sub, Var, to_source
from utils.errors import MapSyntaxError

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_UINT = re.compile(r"\d+")
_OPS = "+-*^()"


@dataclass(frozen=True)
class Token:
    kind: str    # NUM, ID, OP, END
    text: str
    pos: int     # character index


@dataclass(frozen=True)
class MapExpr:
    root: Node
    source: str = field(default="", compare=False)

    def __str__(self): return to_source(self.root)


def _byte_offset(source: str, pos: int) -> int:
    return len(source[:pos].encode("utf-8"))


def tokenize(source: str) -> List[Token]:
    tokens, pos, n = [], 0, len(source)
    while pos < n:
        ch = source[pos]
        if ch.isspace():
            pos += 1; continue
        if ch in _OPS:
            tokens.append(Token("OP", ch, pos)); pos += 1; continue
        m = _NUMBER.match(source, pos)
        if m:
            tokens.append(Token("NUM", m.group(), pos)); pos = m.end(); continue
        m = _IDENT.match(source, pos)
        if m:
            tokens.append(Token("ID", m.group(), pos)); pos = m.end(); continue
        if ch == "/":
            raise MapSyntaxError("division is not supported", _byte_offset(source, pos), source)
        raise MapSyntaxError(f"unexpected character {ch!r}", _byte_offset(source, pos), source)
    tokens.append(Token("END", "", n))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0

    def peek(self) -> Token: return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]; self.i += 1
        return t

    def fail(self, msg: str, tok: Token):
        raise MapSyntaxError(msg, _byte_offset(self.source, tok.pos), self.source)

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.kind != "OP" or t.text != text:
            self.fail(f"expected {text!r}, found {t.text or 'end of input'!r}", t)
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        t = self.peek()
        if t.kind != "END":
            self.fail(f"unexpected token {t.text!r}", t)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.advance().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek().kind == "OP" and self.peek().text == "*":
            self.advance()
            rhs = self.factor()
            if isinstance(node, Const) and complex(node.value).imag == 0:
                node = Scale(complex(node.value).real, rhs)
            else:
                node = Mul(node, rhs)
        return node

    def factor(self) -> Node:
        base = self.atom()
        if self.peek().kind == "OP" and self.peek().text == "^":
            self.advance()
            t = self.peek()
            if t.kind != "NUM" or not _UINT.fullmatch(t.text):
                self.fail("exponent must be a nonnegative integer literal", t)
            self.advance()
            return Pow(base, int(t.text))
        return base

    def atom(self) -> Node:
        t = self.peek()
        if t.kind == "NUM":
            v = float(t.text)
            if not math.isfinite(v): self.fail(f"number {t.text!r} is out of range", t)
            self.advance()
            return Const(complex(v, 0.0))
        if t.kind == "ID":
            if t.text == "z": self.advance(); return Var()
            if t.text == "i": self.advance(); return Const(1j)
            self.fail(f"unknown identifier {t.text!r}", t)
        if t.kind == "OP" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail(f"unexpected {t.text or 'end of input'!r}", t)


def parse_map_expr(source: str) -> MapExpr:
    if not isinstance(source, str) or not source.strip():
        raise MapSyntaxError("empty expression", 0, source if isinstance(source, str) else "")
    return MapExpr(_Parser(source).parse(), source)
