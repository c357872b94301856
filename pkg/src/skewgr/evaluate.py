"""Evaluate parsed expressions in a field, an Ore ring or a free algebra."""

from __future__ import annotations

from typing import Optional, Union

from .field import PrimeField, RationalFn
from .graded import FreeContext, NCPoly
from .ore import OrePoly, OreRing
from .syntax import BinOp, Gen, Neg, Node, Num, ParseError, Pow, Var, parse_expr

Target = Union[PrimeField, OreRing, FreeContext]
Value = Union[RationalFn, OrePoly, NCPoly]


def kind_of(target: Target) -> str:
    if isinstance(target, PrimeField):
        return "field"
    if isinstance(target, OreRing):
        return "ore"
    if isinstance(target, FreeContext):
        return "free"
    raise TypeError(f"cannot evaluate into {type(target).__name__}")


def evaluate(node: Node, target: Target) -> Value:
    """Evaluate a tree; identical subtrees are evaluated once."""
    kind = kind_of(target)
    memo: dict = {}

    def leaf(n):
        if isinstance(n, Num):
            if kind == "field":
                return RationalFn.from_poly(target.const(n.value))
            if kind == "ore":
                return target(n.value)
            return target.scalar(n.value)
        if isinstance(n, Var):
            if kind == "field":
                return target.t(n.index)
            if kind == "ore":
                return target.t(n.index)
            raise ParseError("t-variables are not allowed in a free-algebra expression", n.pos)
        if kind == "ore":
            if n.index is not None:
                raise ParseError("the Ore generator is written 'x'", n.pos)
            return target.x
        if kind == "free":
            if n.index is None or not 1 <= n.index <= target.n:
                raise ParseError(f"generator index out of range 1..{target.n}", n.pos)
            return target.gen(n.index)
        raise ParseError("generators are not allowed in a field expression", n.pos)

    def ev(n):
        key = id(n)
        if key in memo:
            return memo[key][1]
        if isinstance(n, (Num, Var, Gen)):
            val = leaf(n)
        elif isinstance(n, Neg):
            val = -ev(n.operand)
        elif isinstance(n, Pow):
            val = ev(n.base) ** n.exponent
        elif isinstance(n, BinOp):
            a, b = ev(n.left), ev(n.right)
            if n.op == "+":
                val = a + b
            elif n.op == "-":
                val = a - b
            elif n.op == "*":
                val = a * b
            elif kind == "free":
                if not isinstance(n.right, Num):
                    raise ParseError("free-algebra division is only allowed by integer literals", n.pos)
                val = a / n.right.value
            else:
                val = a / b
        else:
            raise TypeError(f"not an expression node: {n!r}")
        memo[key] = (n, val)  # keep n alive so its id stays unique
        return val

    return ev(node)


def parse_value(text: str, target: Target) -> Value:
    """Parse and evaluate ``text`` in ``target``."""
    kind = kind_of(target)
    ngens: Optional[int] = target.n if kind == "free" else None
    return evaluate(parse_expr(text, kind, ngens), target)
