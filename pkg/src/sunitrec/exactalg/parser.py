"""Recursive-descent parser for rational-function expressions in ``x``.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)?
    atom   := INT | "x" | "(" expr ")"

``-x^2`` parses as ``-(x^2)``.  Exponents must be nonnegative integer
literals, so ``x^(-1)`` and ``x^-1`` are rejected.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .ratfunc import RatFunc


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.text = text


class Token(NamedTuple):
    kind: str
    value: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<x>x)|(?P<op>[-+*/^()]))")


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Token) -> ParseError:
        return ParseError(message, tok.pos, self.text)

    def expect(self, value: str) -> Token:
        tok = self.next()
        if tok.value != value or tok.kind != "op":
            what = "end of input" if tok.kind == "end" else repr(tok.value)
            raise self.error(f"expected {value!r}, found {what}", tok)
        return tok

    def parse(self) -> RatFunc:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise self.error(f"unexpected {tok.value!r}", tok)
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.next().value
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.unary()
        while self.peek().kind == "op" and self.peek().value in "*/":
            tok = self.next()
            rhs = self.unary()
            if tok.value == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise self.error("division by zero", tok)
                value = value / rhs
        return value

    def unary(self) -> RatFunc:
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.next()
            inner = self.unary()
            return -inner if tok.value == "-" else inner
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.next()
            tok = self.next()
            if tok.kind != "int":
                raise self.error("exponent must be a nonnegative integer literal", tok)
            return base ** int(tok.value)
        return base

    def atom(self) -> RatFunc:
        tok = self.next()
        if tok.kind == "int":
            return RatFunc.constant(int(tok.value))
        if tok.kind == "x":
            return RatFunc.x()
        if tok.kind == "op" and tok.value == "(":
            value = self.expr()
            self.expect(")")
            return value
        what = "end of input" if tok.kind == "end" else repr(tok.value)
        raise self.error(f"unexpected {what}", tok)


def parse_expr(text: str) -> RatFunc:
    """Parse ``text`` into an exact :class:`RatFunc`.

    >>> parse_expr("(x+1)^3/x").render()
    '(x^3 + 3*x^2 + 3*x + 1)/(x)'
    """
    return _Parser(text).parse()
