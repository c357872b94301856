"""Tokenizer and recursive-descent parser for the expression language.

Grammar (whitespace is insignificant, implicit multiplication is rejected)::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | primary ('^' nat)?
    primary := nat | 't' nat | 'x' nat? | '(' expr ')'

Precedence is ``^`` > unary ``-`` > ``* /`` > ``+ -``; binary operators are
left associative.  Operand order is always preserved, since the ``ore`` and
``free`` kinds are noncommutative.

Kinds restrict which atoms and divisions are legal:

* ``field``: ``t<k>`` variables, any division.
* ``ore``: ``t<k>`` and the bare generator ``x``; a divisor must not contain ``x``.
* ``free``: generators ``x1 .. xn``; a divisor must be an integer literal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

KINDS = ("field", "ore", "free")


class ParseError(ValueError):
    """Syntax error; ``column`` is 1-based."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column
        self.reason = message


@dataclass(frozen=True)
class Num:
    value: int
    pos: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    """The field variable ``t<index>``."""

    index: int
    pos: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Gen:
    """A noncommutative generator: ``x`` (index None) or ``x<index>``."""

    index: Optional[int] = None
    pos: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Node"
    right: "Node"
    pos: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: int = field(default=0, compare=False, repr=False)


Node = Union[Num, Var, Gen, BinOp, Neg, Pow]


def to_sexpr(node: Node) -> str:
    """Compact prefix rendering, used to pin down parse trees in tests."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return f"t{node.index}"
    if isinstance(node, Gen):
        return "x" if node.index is None else f"x{node.index}"
    if isinstance(node, BinOp):
        return f"({node.op} {to_sexpr(node.left)} {to_sexpr(node.right)})"
    if isinstance(node, Neg):
        return f"(neg {to_sexpr(node.operand)})"
    if isinstance(node, Pow):
        return f"(^ {to_sexpr(node.base)} {node.exponent})"
    raise TypeError(f"not an expression node: {node!r}")


def to_text(node: Node) -> str:
    """Fully parenthesized source text for a tree."""
    if isinstance(node, (Num, Var, Gen)):
        return to_sexpr(node)
    if isinstance(node, BinOp):
        return f"({to_text(node.left)} {node.op} {to_text(node.right)})"
    if isinstance(node, Neg):
        return f"(-{to_text(node.operand)})"
    return f"{to_text(node.base)}^{node.exponent}"


def contains_generator(node: Node) -> bool:
    if isinstance(node, Gen):
        return True
    if isinstance(node, BinOp):
        return contains_generator(node.left) or contains_generator(node.right)
    if isinstance(node, Neg):
        return contains_generator(node.operand)
    if isinstance(node, Pow):
        return contains_generator(node.base)
    return False


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"(?P<num>\d+)|(?P<var>t\d+)|(?P<gen>x\d*)|(?P<op>[-+*/^()])|(?P<ws>\s+)")


@dataclass(frozen=True)
class Token:
    kind: str  # num, var, gen, op, eof
    text: str
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = re.match(r"[A-Za-z_]\w*|\S", text[pos:]).group(0)
            raise ParseError(f"unknown token {bad!r}", pos + 1)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(0), pos + 1))
        pos = m.end()
    tokens.append(Token("eof", "", len(text) + 1))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, kind: str, ngens: Optional[int]):
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
        self.tokens = tokenize(text)
        self.i = 0
        self.kind = kind
        self.ngens = ngens

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected {text!r}, found {found}", tok.column)
        return self.advance()

    def parse(self) -> Node:
        if self.peek().kind == "eof":
            raise ParseError("empty expression", 1)
        node = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            if tok.kind in ("num", "var", "gen") or tok.text == "(":
                raise ParseError("implicit multiplication is not allowed; use '*'", tok.column)
            raise ParseError(f"unexpected {tok.text!r}", tok.column)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().text in ("+", "-"):
            tok = self.advance()
            node = BinOp(tok.text, node, self.term(), tok.column)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek().text in ("*", "/"):
            tok = self.advance()
            rhs = self.factor()
            if tok.text == "/":
                self.check_divisor(rhs, tok)
            node = BinOp(tok.text, node, rhs, tok.column)
        return node

    def check_divisor(self, rhs: Node, tok: Token) -> None:
        if self.kind == "ore" and contains_generator(rhs):
            raise ParseError("division by an expression containing x", tok.column)
        if self.kind == "free" and not isinstance(rhs, Num):
            raise ParseError("free-algebra division is only allowed by integer literals", tok.column)

    def factor(self) -> Node:
        tok = self.peek()
        if tok.text == "-":
            self.advance()
            return Neg(self.factor(), tok.column)
        node = self.primary()
        if self.peek().text == "^":
            caret = self.advance()
            exp = self.peek()
            if exp.kind != "num":
                raise ParseError("exponent must be a nonnegative integer literal", exp.column)
            self.advance()
            node = Pow(node, int(exp.text), caret.column)
        return node

    def primary(self) -> Node:
        tok = self.advance()
        if tok.kind == "num":
            return Num(int(tok.text), tok.column)
        if tok.kind == "var":
            if self.kind == "free":
                raise ParseError(f"variable {tok.text!r} is not allowed in a free-algebra expression", tok.column)
            return Var(int(tok.text[1:]), tok.column)
        if tok.kind == "gen":
            return self.generator(tok)
        if tok.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"unexpected {found}", tok.column)

    def generator(self, tok: Token) -> Gen:
        index = int(tok.text[1:]) if len(tok.text) > 1 else None
        if self.kind == "field":
            raise ParseError(f"generator {tok.text!r} is not allowed in a field expression", tok.column)
        if self.kind == "ore" and index is not None:
            raise ParseError(f"the Ore generator is written 'x', not {tok.text!r}", tok.column)
        if self.kind == "free":
            if index is None or index < 1:
                raise ParseError("free-algebra generators are written x1, x2, ...", tok.column)
            if self.ngens is not None and index > self.ngens:
                raise ParseError(f"generator {tok.text!r} out of range (n = {self.ngens})", tok.column)
        return Gen(index, tok.column)


def parse_expr(text: str, kind: str = "field", ngens: Optional[int] = None) -> Node:
    """Parse ``text`` into an expression tree of the given kind."""
    return _Parser(text, kind, ngens).parse()
