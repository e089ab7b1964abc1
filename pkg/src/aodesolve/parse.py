"""Parser for the ``.sys`` text format.

One statement per line (``;`` also separates statements)::

    y*y' - 1 = 0          # equation
    z''' /= 0             # inequation
    y1^(3) + x*y2 = 0     # caret derivative form, independent variable x

``lhs = rhs`` is read as ``lhs - rhs = 0``.  Coefficients are exact
integers or decimals; ``/`` divides by a constant.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from gmpy2 import mpq

from .poly import Polynomial, jet
from .systems import DiffSystem


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<deriv>[A-Za-z_][A-Za-z0-9_]*\^\(\s*\d+\s*\))
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*'*)
  | (?P<op>/=|!=|\*\*|[-+*/^()=])
    """,
    re.VERBOSE,
)

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z_]*\d*$")


def _tokenize(text: str, line: int):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, tokens, line):
        self.toks = tokens
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            self.error(f"expected {value!r}, found {t[1] or 'end of line'!r}", t)
        return t

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    self.error("division is only allowed by a nonzero constant", op)
                acc = acc.scale(1 / rhs.constant_value())
        return acc

    def unary(self) -> Polynomial:
        if self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            val = self.unary()
            return -val if op == "-" else val
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        while self.peek()[0] == "op" and self.peek()[1] in ("^", "**"):
            self.take()
            tok = self.peek()
            if tok[0] == "num" and "." not in tok[1]:
                self.take()
                exp = int(tok[1])
            elif tok[1] == "(":
                self.take()
                inner = self.take()
                if inner[0] != "num" or "." in inner[1]:
                    self.error("exponent must be a non-negative integer", inner)
                self.expect(")")
                exp = int(inner[1])
            else:
                self.error("exponent must be a non-negative integer", tok)
            base = base ** exp
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, text, col = tok
        if kind == "num":
            return Polynomial.constant(mpq(Fraction(text)))
        if kind == "deriv":
            name, order = text.split("^", 1)
            return self.variable(name, int(order.strip("() \t")), tok)
        if kind == "name":
            stripped = text.rstrip("'")
            return self.variable(stripped, len(text) - len(stripped), tok)
        if text == "(":
            val = self.expr()
            self.expect(")")
            return val
        self.error(f"unexpected {text or 'end of line'!r}", tok)

    def variable(self, name, order, tok):
        if not _IDENT.match(name):
            self.error(f"unknown symbol {name!r}", tok)
        if name == "x" and order:
            self.error("derivative of the independent variable x", tok)
        return Polynomial.variable(jet(name, order))


def _split_statements(source: str):
    for lineno, raw in enumerate(source.splitlines(), start=1):
        text = raw.split("#", 1)[0]
        offset = 0
        for piece in text.split(";"):
            if piece.strip():
                yield lineno, offset, piece
            offset += len(piece) + 1


def parse_statement(text: str, line: int = 1, offset: int = 0) -> Tuple[str, Polynomial]:
    toks = [(k, v, c + offset) for k, v, c in _tokenize(text, line)]
    p = _Parser(toks, line)
    lhs = p.expr()
    rel = p.take()
    if rel[1] == "=":
        kind = "eq"
    elif rel[1] in ("/=", "!="):
        kind = "ineq"
    else:
        p.error("expected '=' or '/=' after the polynomial", rel)
    rhs = p.expr()
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    return kind, lhs - rhs


def parse_polynomial(text: str) -> Polynomial:
    toks = _tokenize(text, 1)
    p = _Parser(toks, 1)
    val = p.expr()
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    return val


def parse(source: str) -> DiffSystem:
    """Parse ``.sys`` source text into a :class:`DiffSystem`."""
    eqs: List[Polynomial] = []
    ineqs: List[Polynomial] = []
    for line, offset, stmt in _split_statements(source):
        kind, poly = parse_statement(stmt, line, offset)
        (eqs if kind == "eq" else ineqs).append(poly)
    return DiffSystem(eqs, ineqs)


def parse_file(path: str) -> DiffSystem:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
