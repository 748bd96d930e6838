"""Text grammar for Lie-algebra expressions.

    expr      := term (('+' | '-') term)*
    term      := '-'? ((rational '*')? factor | rational)
    factor    := generator | '[' expr ',' expr ']' | '(' expr ')'
    rational  := digits ('/' digits)?
    generator := letter (letter | digit | '_')*

Whitespace is insignificant.  A bare rational is only legal when it equals
zero (there is no constant term in a Lie algebra).  Parsing produces a small
AST; `evaluate_expression` folds it through caller-supplied operations, so
the same grammar serves every algebra implementation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Union

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|([-+*/\[\](),])|(\S))")


class ExpressionError(ValueError):
    """Syntax or name error in a textual expression.

    `position` is the 0-based offset into the source text.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Generator:
    name: str
    position: int


@dataclass(frozen=True)
class Bracket:
    left: "Node"
    right: "Node"
    position: int


@dataclass(frozen=True)
class Sum:
    # (coefficient, factor) per term; factor is None for a literal zero
    terms: tuple[tuple[Fraction, Union[Generator, Bracket, "Sum", None]], ...]


Node = Union[Generator, Bracket, Sum]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        pos = m.end()
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            tokens.append(("sym", m.group(3), m.start(3)))
        elif m.group(4):
            raise ExpressionError(f"unexpected character {m.group(4)!r}", m.start(4))
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_symbol(self, *symbols: str) -> bool:
        kind, value, _ = self.peek()
        return kind == "sym" and value in symbols

    def expect_symbol(self, symbol: str) -> None:
        kind, value, pos = self.peek()
        if kind != "sym" or value != symbol:
            raise ExpressionError(f"expected {symbol!r}", pos)
        self.advance()

    def expr(self) -> Sum:
        terms = [self.term(_ONE)]
        while self.at_symbol("+", "-"):
            sign = _ONE if self.advance()[1] == "+" else -_ONE
            terms.append(self.term(sign))
        return Sum(tuple(terms))

    def term(self, sign: Fraction) -> tuple[Fraction, Node | None]:
        if self.at_symbol("-"):
            self.advance()
            sign = -sign
        kind, value, pos = self.peek()
        if kind == "int":
            self.advance()
            numerator = int(value)
            denominator = 1
            if self.at_symbol("/"):
                self.advance()
                dkind, dvalue, dpos = self.peek()
                if dkind != "int":
                    raise ExpressionError("expected digits after '/'", dpos)
                self.advance()
                denominator = int(dvalue)
                if denominator == 0:
                    raise ExpressionError("zero denominator", dpos)
            coefficient = Fraction(numerator, denominator)
            if self.at_symbol("*"):
                self.advance()
                return (sign * coefficient, self.factor())
            if coefficient == 0:
                return (_ZERO, None)
            raise ExpressionError("expected '*' after a coefficient", self.peek()[2])
        return (sign, self.factor())

    def factor(self) -> Node:
        kind, value, pos = self.peek()
        if kind == "name":
            self.advance()
            return Generator(value, pos)
        if kind == "sym" and value == "[":
            self.advance()
            left = self.expr()
            self.expect_symbol(",")
            right = self.expr()
            self.expect_symbol("]")
            return Bracket(left, right, pos)
        if kind == "sym" and value == "(":
            self.advance()
            inner = self.expr()
            self.expect_symbol(")")
            return inner
        raise ExpressionError("expected a generator, '[' or '('", pos)


def parse_expression(text: str) -> Sum:
    """Parse `text` into an AST; raises ExpressionError with a position."""
    parser = _Parser(text)
    node = parser.expr()
    kind, value, pos = parser.peek()
    if kind != "eof":
        raise ExpressionError(f"unexpected {value!r}", pos)
    return node


def evaluate_expression(node: Node | None, *, generator: Callable, bracket: Callable,
                        scale: Callable, add: Callable, zero: Callable):
    """Fold an AST through the supplied algebra operations.

    `generator(name, position)` should raise ExpressionError for unknown names.
    """
    if isinstance(node, Generator):
        return generator(node.name, node.position)
    if isinstance(node, Bracket):
        kw = dict(generator=generator, bracket=bracket, scale=scale, add=add, zero=zero)
        return bracket(evaluate_expression(node.left, **kw),
                       evaluate_expression(node.right, **kw))
    if isinstance(node, Sum):
        kw = dict(generator=generator, bracket=bracket, scale=scale, add=add, zero=zero)
        acc = zero()
        for coefficient, factor in node.terms:
            if factor is None or coefficient == 0:
                continue
            value = evaluate_expression(factor, **kw)
            acc = add(acc, value if coefficient == 1 else scale(coefficient, value))
        return acc
    raise TypeError(f"not an expression node: {node!r}")


def expression_names(node: Node | None) -> Iterator[str]:
    """Yield every generator name mentioned in the AST (with repetitions)."""
    if isinstance(node, Generator):
        yield node.name
    elif isinstance(node, Bracket):
        yield from expression_names(node.left)
        yield from expression_names(node.right)
    elif isinstance(node, Sum):
        for _, factor in node.terms:
            yield from expression_names(factor)
