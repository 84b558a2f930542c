"""Recursive-descent parser for coefficient and element expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor | <generator> factor)*
    factor := ['-'] atom ['^' signed_int]
    atom   := 'q' | integer | generator | '(' expr ')'

Juxtaposition is multiplication only in front of a generator name, so
``x11x22`` and ``x1 x2`` are words while ``2q`` is a syntax error.  Values are
combined with ordinary Python operators, which lets the same parser build
:class:`~ore_forge.coeff.CoeffRat`, ``Element`` or ``LaurentElement`` values
depending on what ``generator`` returns.
"""

from __future__ import annotations

from typing import Any, Callable, Sequence

from .coeff import Q, CoeffRat
from .errors import ParseError

_PUNCT = {"+": "PLUS", "-": "MINUS", "*": "STAR", "/": "SLASH", "^": "CARET", "(": "LP", ")": "RP"}


def tokenize(text: str, names: Sequence[str] = ()) -> list[tuple[str, Any, int]]:
    by_length = sorted(names, key=len, reverse=True)
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append((_PUNCT[ch], ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            for name in by_length:
                if text.startswith(name, i):
                    tokens.append(("NAME", name, i))
                    i += len(name)
                    break
            else:
                if ch == "q" and not (i + 1 < n and (text[i + 1].isalnum() or text[i + 1] == "_")):
                    tokens.append(("Q", "q", i))
                    i += 1
                    continue
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                raise ParseError(f"unknown identifier {text[i:j]!r}", i, text)
            continue
        raise ParseError(f"unexpected character {ch!r}", i, text)
    tokens.append(("END", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Sequence[str], generator: Callable[[str], Any] | None):
        self.text = text
        self.tokens = tokenize(text, names)
        self.pos = 0
        self.generator = generator

    def peek(self) -> tuple[str, Any, int]:
        return self.tokens[self.pos]

    def take(self, kind: str | None = None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2], self.text)
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], self.text)
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("PLUS", "MINUS"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "PLUS" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while True:
            kind, _, at = self.peek()
            if kind == "STAR":
                self.take()
                value = value * self.factor()
            elif kind == "SLASH":
                self.take()
                divisor = self.factor()
                value = _divide(value, divisor, at, self.text)
            elif kind == "NAME":
                value = value * self.factor()
            else:
                return value

    def factor(self):
        negate = False
        if self.peek()[0] == "MINUS":
            self.take()
            negate = True
        value = self.atom()
        if self.peek()[0] == "CARET":
            _, _, at = self.take()
            sign = 1
            if self.peek()[0] == "MINUS":
                self.take()
                sign = -1
            exponent = sign * self.take("INT")[1]
            value = _power(value, exponent, at, self.text)
        return -value if negate else value

    def atom(self):
        kind, val, at = self.take()
        if kind == "Q":
            return Q
        if kind == "INT":
            return CoeffRat.from_rational(val)
        if kind == "NAME":
            return self.generator(val)
        if kind == "LP":
            value = self.expr()
            self.take("RP")
            return value
        raise ParseError(f"unexpected token {val!r}", at, self.text)


def _divide(value, divisor, at: int, text: str):
    scalar = divisor if isinstance(divisor, CoeffRat) else getattr(divisor, "as_scalar", lambda: None)()
    if scalar is None:
        raise ParseError("division is only allowed by coefficient expressions", at, text)
    if scalar.is_zero():
        raise ParseError("division by zero", at, text)
    return value * scalar.inverse()


def _power(value, exponent: int, at: int, text: str):
    try:
        return value ** exponent
    except ZeroDivisionError:
        raise ParseError("zero raised to a negative power", at, text) from None
    except ValueError as exc:
        raise ParseError(str(exc), at, text) from None


def parse_expression(
    text: str,
    names: Sequence[str] = (),
    generator: Callable[[str], Any] | None = None,
):
    """Parse and evaluate ``text``; generator names are resolved by ``generator``."""
    return _Parser(text, names, generator).parse()
