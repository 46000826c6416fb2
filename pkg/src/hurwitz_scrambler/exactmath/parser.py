"""Recursive-descent parser for rational-function expressions.

Grammar::

    expr     := term (('+'|'-') term)*
    term     := factor (('*'|'/') factor)*
    factor   := '-'? base ('^' UINT)?
    base     := RATIONAL | VAR | '(' expr ')'
    RATIONAL := INT ('/' UINT)?

Multiplication must be written explicitly and exponents are nonnegative
integer literals.  Everything is computed with exact rationals.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from .polynomial import Polynomial
from .ratfunc import DivisionByZeroFunction, RationalFunction

__all__ = ["ExpressionSyntaxError", "parse_rational_function"]


class ExpressionSyntaxError(SyntaxError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


class _Token(NamedTuple):
    kind: str  # "int", "var", "op", "end"
    value: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text: str, var: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break  # trailing whitespace
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(_Token("int", m.group(1), start))
        elif m.group(2) is not None:
            if m.group(2) != var:
                raise ExpressionSyntaxError(f"unknown identifier {m.group(2)!r}", text, start)
            tokens.append(_Token("var", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExpressionSyntaxError(f"unexpected character {ch!r}", text, start)
            tokens.append(_Token("op", ch, start))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, var: str):
        self.text = text
        self.tokens = _tokenize(text, var)
        self.i = 0

    def peek(self, offset: int = 0) -> _Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        return ExpressionSyntaxError(message, self.text, tok.pos)

    def expect_op(self, op: str) -> None:
        tok = self.peek()
        if tok.kind != "op" or tok.value != op:
            raise self.error(f"expected {op!r}")
        self.advance()

    def is_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.value in ops

    def parse(self) -> RationalFunction:
        result = self.expr()
        if self.peek().kind != "end":
            raise self.error("unexpected trailing input")
        return result

    def expr(self) -> RationalFunction:
        acc = self.term()
        while self.is_op("+", "-"):
            op = self.advance().value
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> RationalFunction:
        acc = self.factor()
        while self.is_op("*", "/"):
            op_tok = self.advance()
            rhs = self.factor()
            if op_tok.value == "*":
                acc = acc * rhs
            else:
                if rhs.num.is_zero():
                    raise DivisionByZeroFunction(
                        f"division by an expression equal to 0 at position {op_tok.pos}: {self.text!r}"
                    )
                acc = acc / rhs
        return acc

    def factor(self) -> RationalFunction:
        negate = False
        if self.is_op("-"):
            self.advance()
            negate = True
        value = self.base()
        if self.is_op("^"):
            self.advance()
            tok = self.peek()
            if tok.kind != "int":
                raise self.error("exponent must be a nonnegative integer literal")
            self.advance()
            value = value ** int(tok.value)
        return -value if negate else value

    def base(self) -> RationalFunction:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            value = Fraction(int(tok.value))
            # INT '/' UINT binds as a single rational literal
            if self.is_op("/") and self.peek(1).kind == "int":
                self.advance()
                den_tok = self.advance()
                den = int(den_tok.value)
                if den == 0:
                    raise DivisionByZeroFunction(f"zero denominator at position {den_tok.pos}: {self.text!r}")
                value /= den
            return RationalFunction.constant(value)
        if tok.kind == "var":
            self.advance()
            return RationalFunction(Polynomial.x())
        if self.is_op("("):
            self.advance()
            inner = self.expr()
            self.expect_op(")")
            return inner
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected token {tok.value!r}")


def parse_rational_function(text: str, var: str = "x") -> RationalFunction:
    """Parse ``text`` as an exact rational function of the variable ``var``."""
    if not re.fullmatch(r"[A-Za-z_]\w*", var):
        raise ValueError(f"invalid variable name {var!r}")
    return _Parser(text, var).parse()
