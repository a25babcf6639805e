"""Parser for focal-element expressions such as ``'1u3'`` or ``'(1n2)u3'``.

Grammar::

    expr := term (('u' | 'n') term)*
    term := INT | '(' expr ')'

``u`` is union and ``n`` is intersection. Both operators have the SAME
precedence and associate to the left, so ``1n2u3`` reads ``(1n2)u3`` and
differs from ``1n(2u3)``. Whitespace is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union as _U

from .errors import ParseError


@dataclass(frozen=True)
class Singleton:
    index: int

    def __str__(self) -> str:
        return str(self.index)


@dataclass(frozen=True)
class Union:
    left: "Expression"
    right: "Expression"

    def __str__(self) -> str:
        return f"{_wrap(self.left, Union)}u{_wrap(self.right, None)}"


@dataclass(frozen=True)
class Intersection:
    left: "Expression"
    right: "Expression"

    def __str__(self) -> str:
        return f"{_wrap(self.left, Intersection)}n{_wrap(self.right, None)}"


Expression = _U[Singleton, Union, Intersection]


def _wrap(node, same_kind) -> str:
    # left operand of the same operator needs no parentheses (left-assoc)
    if isinstance(node, Singleton) or type(node) is same_kind:
        return str(node)
    return f"({node})"


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<op>[un()])|(?P<bad>\S))")


def _tokenize(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:  # only trailing whitespace left
            break
        start = match.start(match.lastgroup)
        if match.lastgroup == "bad":
            raise ParseError(f"unexpected character {match.group('bad')!r}", text, start)
        kind = "int" if match.lastgroup == "int" else match.group("op")
        yield kind, match.group(match.lastgroup), start
        pos = match.end()
    yield "end", "", len(text)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = list(_tokenize(text))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, position=None):
        if position is None:
            position = self.peek()[2]
        return ParseError(message, self.text, position)

    def expr(self) -> Expression:
        node = self.term()
        while self.peek()[0] in ("u", "n"):
            op = self.take()[0]
            right = self.term()
            node = Union(node, right) if op == "u" else Intersection(node, right)
        return node

    def term(self) -> Expression:
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return Singleton(int(value))
        if kind == "(":
            self.take()
            node = self.expr()
            if self.peek()[0] != ")":
                raise self.error("expected ')'")
            self.take()
            return node
        if kind == "end":
            raise self.error("unexpected end of expression")
        raise self.error(f"expected singleton index or '(' but found {value!r}")


def parse_expression(text: str) -> Expression:
    """Parse ``text`` into an expression tree, raising ParseError on bad input."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}", str(text), 0)
    parser = _Parser(text)
    if parser.peek()[0] == "end":
        raise parser.error("empty expression")
    node = parser.expr()
    if parser.peek()[0] != "end":
        raise parser.error(f"unexpected {parser.peek()[1]!r}")
    return node


def singleton_indices(expr: Expression) -> set[int]:
    if isinstance(expr, Singleton):
        return {expr.index}
    return singleton_indices(expr.left) | singleton_indices(expr.right)
