"""Tiny expression language for Schubert class arithmetic.

Grammar, with insignificant whitespace:

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := int | ident | '-' base | '(' expr ')'

Multiplication is always spelled '*'; juxtaposition is a syntax error.
Exponents are literal non-negative integers.  Note that '-' lives at the
base level, so "-g^2" parses as (-g)^2 and squaring-then-negating must be
written "-(g^2)".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Add",
    "EvaluationError",
    "Expr",
    "IntLit",
    "Mul",
    "Neg",
    "ParseError",
    "Pow",
    "Sub",
    "Sym",
    "evaluate",
    "parse",
    "to_source",
]


class ParseError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class IntLit:
    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("literals are non-negative; wrap Neg around IntLit")


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    op: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int

    def __post_init__(self) -> None:
        if self.exp < 0:
            raise ValueError("exponent must be a non-negative integer")


Expr = Union[IntLit, Sym, Neg, Add, Sub, Mul, Pow]

_OPS = set("+-*^()")


def _tokenize(text: str) -> Iterator[tuple[str, str, int]]:
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield ("int", text[i:j], i)
            i = j
            continue
        if ch.isalpha():
            # idents start with a letter; underscores only continue them
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield ("ident", text[i:j], i)
            i = j
            continue
        if ch in _OPS:
            yield ("op", ch, i)
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    yield ("end", "", n)


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, value, at = self.peek()
        if kind != "op" or value != op:
            shown = value if kind != "end" else "end of input"
            raise ParseError(f"expected {op!r}, found {shown!r}", at)
        self.advance()

    def expr(self) -> Expr:
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                rhs = self.term()
                node = Add(node, rhs) if value == "+" else Sub(node, rhs)
            else:
                return node

    def term(self) -> Expr:
        node = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                node = Mul(node, self.factor())
            else:
                return node

    def factor(self) -> Expr:
        node = self.base()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            kind, value, at = self.peek()
            if kind != "int":
                shown = value if kind != "end" else "end of input"
                raise ParseError(
                    f"exponent must be a non-negative integer literal, found {shown!r}",
                    at,
                )
            self.advance()
            node = Pow(node, int(value))
        return node

    def base(self) -> Expr:
        kind, value, at = self.advance()
        if kind == "int":
            return IntLit(int(value))
        if kind == "ident":
            return Sym(value)
        if kind == "op" and value == "-":
            return Neg(self.base())
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        shown = value if kind != "end" else "end of input"
        raise ParseError(f"expected a value, found {shown!r}", at)


def parse(text: str) -> Expr:
    parser = _Parser(text)
    node = parser.expr()
    kind, value, at = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected {value!r} after complete expression", at)
    return node


def _base_source(node: Expr) -> str:
    # anything that is not already a grammar `base` needs parentheses
    if isinstance(node, (IntLit, Sym, Neg)):
        return to_source(node)
    return f"({to_source(node)})"


def to_source(node: Expr) -> str:
    """Render an expression; parse(to_source(e)) reproduces e exactly."""
    if isinstance(node, IntLit):
        return str(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Neg):
        return "-" + _base_source(node.op)
    if isinstance(node, Pow):
        return f"{_base_source(node.base)}^{node.exp}"
    if isinstance(node, Mul):
        left = f"({to_source(node.left)})" if isinstance(node.left, (Add, Sub)) else to_source(node.left)
        right = (
            f"({to_source(node.right)})"
            if isinstance(node.right, (Add, Sub, Mul))
            else to_source(node.right)
        )
        return f"{left}*{right}"
    if isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        right = (
            f"({to_source(node.right)})"
            if isinstance(node.right, (Add, Sub))
            else to_source(node.right)
        )
        return f"{to_source(node.left)}{op}{right}"
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(node: Expr, space):
    """Evaluate an expression to a ring element of `space`.

    The space must expose `ring` and a `symbols` mapping from names to ring
    elements; unknown names report the available vocabulary.
    """
    symbols = space.symbols
    if isinstance(node, IntLit):
        return node.value * space.ring.one()
    if isinstance(node, Sym):
        if node.name not in symbols:
            raise EvaluationError(
                f"unknown symbol {node.name!r} in {space.name}; "
                f"available: {', '.join(sorted(symbols))}"
            )
        return symbols[node.name]
    if isinstance(node, Neg):
        return -evaluate(node.op, space)
    if isinstance(node, Add):
        return evaluate(node.left, space) + evaluate(node.right, space)
    if isinstance(node, Sub):
        return evaluate(node.left, space) - evaluate(node.right, space)
    if isinstance(node, Mul):
        return evaluate(node.left, space) * evaluate(node.right, space)
    if isinstance(node, Pow):
        return evaluate(node.base, space) ** node.exp
    raise TypeError(f"not an expression node: {node!r}")
