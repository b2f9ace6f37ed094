"""Expression grammar shared by every text and JSON input.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' exponent)?
    exponent := ['-'] INT | '(' ['-'] INT ')'
    atom   := INT | NAME | '(' expr ')'

Names are resolved against a symbol table supplied by the caller (``x`` and
``q`` for field elements, ``Y0_12`` style jet variables for ideals).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


class ExpressionError(ValueError):
    """Syntax or evaluation error, with the offending character position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


@dataclass
class _Tok:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace is left
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            toks.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), start))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExpressionError(f"unexpected character {ch!r}", start)
            toks.append(_Tok("op", ch, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, symbols, one, divide):
        self.toks = tokenize(text)
        self.i = 0
        self.symbols = symbols
        self.one = one
        self.divide = divide

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self, text=None) -> _Tok:
        tok = self.tok
        if text is not None and tok.text != text:
            found = tok.text or "end of input"
            raise ExpressionError(f"expected {text!r}, found {found!r}", tok.pos)
        self.i += 1
        return tok

    def parse(self):
        if self.tok.kind == "end":
            raise ExpressionError("empty expression", 0)
        value = self.expr()
        if self.tok.kind != "end":
            raise ExpressionError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return value

    def expr(self):
        value = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                value = value * rhs
            else:
                value = self.divide(value, rhs, op.pos)
        return value

    def unary(self):
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self.take().text
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            caret = self.take()
            exp = self.exponent()
            if exp < 0:
                return self.divide(self.one, base**-exp, caret.pos)
            return base**exp
        return base

    def exponent(self) -> int:
        paren = self.tok.text == "("
        if paren:
            self.take("(")
        sign = 1
        if self.tok.text == "-":
            self.take()
            sign = -1
        tok = self.take()
        if tok.kind != "int":
            raise ExpressionError("exponent must be an integer literal", tok.pos)
        if paren:
            self.take(")")
        return sign * int(tok.text)

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.take()
            return self.one * int(tok.text)
        if tok.kind == "name":
            self.take()
            try:
                return self.symbols[tok.text]
            except KeyError:
                raise ExpressionError(f"unknown symbol {tok.text!r}", tok.pos) from None
        if tok.text == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        found = repr(tok.text) if tok.text else "end of input"
        raise ExpressionError(f"unexpected {found}", tok.pos)


def _field_divide(a, b, pos):
    if b == 0:
        raise ExpressionError("division by zero", pos)
    return a / b


def parse(
    text: str,
    symbols: dict,
    one,
    divide: Callable | None = None,
):
    """Evaluate ``text`` in the ring of ``one`` with the given symbols."""
    if not isinstance(text, str):
        raise ExpressionError(f"expected an expression string, got {type(text).__name__}")
    return _Parser(text, symbols, one, divide or _field_divide).parse()


def format_coefficient(c) -> str:
    c = Fraction(int(c.numerator), int(c.denominator))
    return str(c)


def format_terms(terms, names: list[str]) -> str:
    """Format ``[(exponents, rational coefficient), ...]`` in the grammar."""
    out = []
    for exps, c in terms:
        if c == 0:
            continue
        c = Fraction(int(c.numerator), int(c.denominator))
        neg = c < 0
        c = abs(c)
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        if c != 1 or not factors:
            factors.insert(0, str(c))
        body = "*".join(factors)
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) or "0"
